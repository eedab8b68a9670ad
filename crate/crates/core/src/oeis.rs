//! OEIS b-files: a local fixture cache, an opt-in network fetch, and
//! alignment of computed values against the stored terms.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::{alpha_sequence, quarter_weighted_row_sums, triangle_row, TriangleKind};
use crate::error::{Error, Result};

/// Environment variable naming the fixture directory.
pub const FIXTURE_ENV: &str = "CATALAN_OEIS_DIR";

/// Used when the environment variable is unset.
pub const DEFAULT_FIXTURE_DIR: &str = "fixtures/oeis";

/// Largest offset shift tried by [`compare`].
pub const MAX_SHIFT: i64 = 3;

/// Every compared alignment must agree on this many leading entries.
const ALIGN_PREFIX: usize = 5;

/// The sequences this crate knows how to compute.
pub const KNOWN_IDS: [&str; 7] = ["A086347", "A039598", "A039599", "A194725", "A130970", "A051550", "A132863"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Fixture,
    Network,
}

/// Terms `a(offset), a(offset + 1), ...` of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisSeq {
    pub id: String,
    pub offset: i64,
    pub values: Vec<BigInt>,
    pub source: Source,
}

pub fn validate_id(id: &str) -> Result<()> {
    let b = id.as_bytes();
    if b.len() == 7 && b[0] == b'A' && b[1..].iter().all(u8::is_ascii_digit) {
        Ok(())
    } else {
        Err(Error::Parse(format!("{id:?} is not an OEIS id of the form A123456")))
    }
}

fn bfile_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

/// Parses b-file text (`n a(n)` per line, `#` comments and blank lines skipped).
/// Indices must be consecutive. Returns the offset and the values.
pub fn parse_bfile(text: &str) -> Result<(i64, Vec<BigInt>)> {
    let mut offset = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: {line:?} is not \"n value\"", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let v = BigInt::from_str(v).map_err(|_| bad())?;
        let start = *offset.get_or_insert(n);
        if n != start + values.len() as i64 {
            return Err(Error::Parse(format!("line {}: index {n} breaks the consecutive run", lineno + 1)));
        }
        values.push(v);
    }
    let offset = offset.ok_or_else(|| Error::Parse("b-file has no terms".into()))?;
    Ok((offset, values))
}

/// `$CATALAN_OEIS_DIR`, or `./fixtures/oeis`.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_ENV).map_or_else(|| PathBuf::from(DEFAULT_FIXTURE_DIR), PathBuf::from)
}

/// Loads at least `count` terms from the fixture directory.
pub fn load(id: &str, count: usize, offline_only: bool) -> Result<OeisSeq> {
    load_from(&fixture_dir(), id, count, offline_only)
}

/// Like [`load`] with an explicit directory.
///
/// The fixture is preferred. Without one (or with too few terms) and with
/// network access allowed, the b-file is downloaded from oeis.org and
/// written into `dir` before use.
pub fn load_from(dir: &Path, id: &str, count: usize, offline_only: bool) -> Result<OeisSeq> {
    validate_id(id)?;
    let path = dir.join(bfile_name(id));
    let short = match fs::read_to_string(&path) {
        Ok(text) => {
            let (offset, values) = parse_bfile(&text)?;
            if values.len() >= count {
                return Ok(OeisSeq { id: id.to_string(), offset, values, source: Source::Fixture });
            }
            Some(values.len())
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(e.into()),
    };
    if offline_only {
        return Err(Error::NotFound(match short {
            Some(n) => format!("{id}: fixture has {n} terms, {count} requested (network disabled)"),
            None => format!("{id}: no fixture in {} (network disabled)", dir.display()),
        }));
    }
    let text = fetch(id)?;
    let (offset, values) = parse_bfile(&text)?;
    if values.len() < count {
        return Err(Error::NotFound(format!("{id}: only {} terms available, {count} requested", values.len())));
    }
    store(dir, &path, &text)?;
    Ok(OeisSeq { id: id.to_string(), offset, values, source: Source::Network })
}

/// URL of the b-file for `id`.
pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/{}", bfile_name(id))
}

fn fetch(id: &str) -> Result<String> {
    match ureq::get(&bfile_url(id)).call() {
        Ok(mut resp) => resp.body_mut().read_to_string().map_err(|e| Error::Network(e.to_string())),
        Err(ureq::Error::StatusCode(404)) => Err(Error::NotFound(format!("{id}: oeis.org returned 404"))),
        Err(e) => Err(Error::Network(e.to_string())),
    }
}

// write to a temporary file in the same directory, then rename over the target
fn store(dir: &Path, path: &Path, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// First disagreement found by [`compare`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Position in the computed list.
    pub position: usize,
    /// OEIS index `n` of the stored term it was compared with.
    pub index: i64,
    #[serde(serialize_with = "ser_decimal")]
    pub expected: BigInt,
    #[serde(serialize_with = "ser_decimal")]
    pub computed: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub id: String,
    /// Chosen shift relative to the nominal alignment.
    pub shift: i64,
    /// Number of computed terms that overlap the stored ones.
    pub compared: usize,
    /// Length of the agreeing prefix.
    pub matched: usize,
    pub first_mismatch: Option<Mismatch>,
    pub full_match: bool,
}

fn ser_decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Aligns `computed` (terms for `n = computed_offset, computed_offset + 1, ...`)
/// against `seq`.
///
/// Every shift `s` in `-3..=3` pairs `computed[i]` with the stored term of
/// index `computed_offset + i + s`. Shifts that disagree within the first five
/// compared entries are discarded; among the rest the longest agreeing prefix
/// wins, then the smallest `|s|`.
pub fn compare(seq: &OeisSeq, computed: &[BigInt], computed_offset: i64) -> Result<CompareReport> {
    if computed.is_empty() {
        return Err(Error::Precondition("nothing to compare".into()));
    }
    let mut best: Option<CompareReport> = None;
    for s in (0..=MAX_SHIFT).flat_map(|a| if a == 0 { vec![0] } else { vec![-a, a] }) {
        let mut compared = 0;
        let mut first_mismatch = None;
        for (i, c) in computed.iter().enumerate() {
            let index = computed_offset + i as i64 + s;
            let pos = index - seq.offset;
            if pos < 0 {
                continue;
            }
            let Some(expected) = seq.values.get(pos as usize) else { break };
            if first_mismatch.is_none() && expected != c {
                first_mismatch = Some(Mismatch { position: i, index, expected: expected.clone(), computed: c.clone() });
            }
            compared += 1;
        }
        let matched = first_mismatch.as_ref().map_or(compared, |m| {
            computed[..m.position].iter().enumerate().filter(|(i, _)| computed_offset + *i as i64 + s >= seq.offset).count()
        });
        if compared == 0 || matched < compared.min(ALIGN_PREFIX) {
            continue;
        }
        let report = CompareReport {
            id: seq.id.clone(),
            shift: s,
            compared,
            matched,
            full_match: first_mismatch.is_none(),
            first_mismatch,
        };
        if best.as_ref().is_none_or(|b| report.matched > b.matched) {
            best = Some(report);
        }
    }
    best.ok_or_else(|| {
        Error::NoAlignment(format!("{}: every shift within +-{MAX_SHIFT} mismatches in the first {ALIGN_PREFIX} entries", seq.id))
    })
}

/// At least `count` locally computed terms of a known sequence, with the
/// index of the first one.
///
/// The triangle flattenings list rows in order and each row left to right,
/// `B` from row 1 and `A` from row 0, both starting at index 0.
pub fn computed_terms(id: &str, count: usize) -> Result<(i64, Vec<BigInt>)> {
    validate_id(id)?;
    let flat = |kind: TriangleKind| -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(count);
        let mut n = kind.first_row();
        while out.len() < count {
            out.extend(triangle_row(kind, n)?);
            n += 1;
        }
        Ok(out)
    };
    let sums = |from: u64| (from..from + count as u64).map(quarter_weighted_row_sums);
    let need = |x: Option<BigInt>| x.ok_or_else(|| Error::Internal("row sum undefined".into()));
    Ok(match id {
        "A086347" => (1, alpha_sequence(count)),
        "A039598" => (0, flat(TriangleKind::B)?),
        "A039599" => (0, flat(TriangleKind::A)?),
        "A194725" => (1, sums(1).map(|r| need(r?.a)).collect::<Result<_>>()?),
        "A130970" => (0, sums(0).map(|r| Ok(r?.b)).collect::<Result<_>>()?),
        "A051550" => (1, sums(1).map(|r| need(r?.d)).collect::<Result<_>>()?),
        "A132863" => (0, sums(0).map(|r| Ok(r?.e)).collect::<Result<_>>()?),
        _ => return Err(Error::NotFound(format!("{id} is not one of the sequences computed here"))),
    })
}
