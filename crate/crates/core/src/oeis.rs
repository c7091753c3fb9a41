//! Lookup of integer sequences in the OEIS.
//!
//! Local matching scans a snapshot in the "stripped" layout, one entry per
//! line (`A000045 ,0,1,1,2,3,5,`), optionally gzip-compressed. Remote search
//! needs the `remote` feature and queries `$OEIS_BASE_URL/search`.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const DEFAULT_MIN_OVERLAP: usize = 8;
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";
pub const BASE_URL_ENV: &str = "OEIS_BASE_URL";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OeisMatch {
    pub id: String,
    /// Position in the entry's term list where the query starts.
    pub offset: usize,
    pub matched_length: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum OeisError {
    #[error("cannot read OEIS snapshot {path}: {reason}")]
    DbUnreadable { path: String, reason: String },
    #[error("need at least {needed} terms to search, got {got}")]
    TooFewTerms { needed: usize, got: usize },
    #[error("OEIS request timed out after {0:?}")]
    Timeout(Duration),
    #[error("OEIS is unreachable: {0}")]
    Offline(String),
    #[error("malformed OEIS response: {0}")]
    MalformedResponse(String),
}

/// `A` followed by exactly six digits.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

fn parse_terms(data: &str) -> Option<Vec<BigInt>> {
    data.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect()
}

/// One snapshot line, or `None` for comments and blank lines.
fn parse_line(line: &str) -> Result<Option<(String, Vec<BigInt>)>, String> {
    let line = line.trim_end();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let (id, data) = line.split_once(' ').ok_or_else(|| format!("no term list in {line:?}"))?;
    if !is_valid_id(id) {
        return Err(format!("bad sequence id {id:?}"));
    }
    let terms = parse_terms(data).ok_or_else(|| format!("bad term list for {id}"))?;
    Ok(Some((id.to_string(), terms)))
}

fn find_run(haystack: &[BigInt], needle: &[BigInt]) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    haystack.windows(needle.len()).position(|w| w == needle)
}

fn check_terms(terms: &[BigInt], min_overlap: usize) -> Result<(), OeisError> {
    let needed = min_overlap.max(1);
    if terms.len() < needed {
        return Err(OeisError::TooFewTerms {
            needed,
            got: terms.len(),
        });
    }
    Ok(())
}

/// Entries of a snapshot read from `reader` that contain `terms` as a
/// consecutive run, sorted by id.
pub fn match_snapshot(terms: &[BigInt], reader: impl BufRead, min_overlap: usize) -> Result<Vec<OeisMatch>, OeisError> {
    check_terms(terms, min_overlap)?;
    let unreadable = |reason: String| OeisError::DbUnreadable {
        path: "<reader>".into(),
        reason,
    };
    let mut found = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| unreadable(e.to_string()))?;
        let entry = parse_line(&line).map_err(|e| unreadable(format!("line {}: {e}", i + 1)))?;
        if let Some((id, data)) = entry {
            if let Some(offset) = find_run(&data, terms) {
                found.push(OeisMatch {
                    id,
                    offset,
                    matched_length: terms.len(),
                });
            }
        }
    }
    found.sort();
    Ok(found)
}

/// [`match_snapshot`] on a file, gunzipping it when it starts with the gzip
/// magic bytes.
pub fn match_local(terms: &[BigInt], db_path: &Path, min_overlap: usize) -> Result<Vec<OeisMatch>, OeisError> {
    let unreadable = |reason: String| OeisError::DbUnreadable {
        path: db_path.display().to_string(),
        reason,
    };
    check_terms(terms, min_overlap)?;
    let mut file = BufReader::new(File::open(db_path).map_err(|e| unreadable(e.to_string()))?);
    let gzipped = file.fill_buf().map_err(|e| unreadable(e.to_string()))?.starts_with(&[0x1f, 0x8b]);
    let reader: Box<dyn Read> = if gzipped {
        Box::new(flate2::read::GzDecoder::new(file))
    } else {
        Box::new(file)
    };
    match_snapshot(terms, BufReader::new(reader), min_overlap).map_err(|e| match e {
        OeisError::DbUnreadable { reason, .. } => unreadable(reason),
        other => other,
    })
}

/// Matches from a search-API JSON body. Accepts both the bare result array
/// and the older `{"results": [...]}` envelope; `null` means no hits.
pub fn parse_search_response(body: &str, terms: &[BigInt]) -> Result<Vec<OeisMatch>, OeisError> {
    let malformed = |m: &str| OeisError::MalformedResponse(m.to_string());
    let value: serde_json::Value = serde_json::from_str(body).map_err(|e| OeisError::MalformedResponse(e.to_string()))?;
    let results = match &value {
        serde_json::Value::Null => return Ok(Vec::new()),
        serde_json::Value::Array(a) => a.as_slice(),
        serde_json::Value::Object(o) => match o.get("results") {
            None | Some(serde_json::Value::Null) => return Ok(Vec::new()),
            Some(serde_json::Value::Array(a)) => a.as_slice(),
            Some(_) => return Err(malformed("`results` is not an array")),
        },
        _ => return Err(malformed("expected an array or object")),
    };
    let mut found = Vec::new();
    for entry in results {
        let number = entry
            .get("number")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| malformed("entry without a numeric `number`"))?;
        let data = entry
            .get("data")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| malformed("entry without a `data` string"))?;
        let data = parse_terms(data).ok_or_else(|| malformed("unparseable `data` field"))?;
        if let Some(offset) = find_run(&data, terms) {
            found.push(OeisMatch {
                id: format!("A{number:06}"),
                offset,
                matched_length: terms.len(),
            });
        }
    }
    found.sort();
    Ok(found)
}

/// Search the OEIS at `$OEIS_BASE_URL` (default [`DEFAULT_BASE_URL`]).
pub fn search_remote(terms: &[BigInt], timeout: Duration) -> Result<Vec<OeisMatch>, OeisError> {
    let base = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
    search_remote_at(&base, terms, timeout)
}

#[cfg(feature = "remote")]
pub fn search_remote_at(base_url: &str, terms: &[BigInt], timeout: Duration) -> Result<Vec<OeisMatch>, OeisError> {
    check_terms(terms, 1)?;
    let query = terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(timeout)).build().into();
    let url = format!("{}/search", base_url.trim_end_matches('/'));
    let fail = |e: ureq::Error| match e {
        ureq::Error::Timeout(_) => OeisError::Timeout(timeout),
        ureq::Error::StatusCode(code) => OeisError::Offline(format!("HTTP status {code}")),
        other => OeisError::Offline(other.to_string()),
    };
    let mut response = agent
        .get(&url)
        .query("q", &query)
        .query("fmt", "json")
        .call()
        .map_err(fail)?;
    let body = response.body_mut().read_to_string().map_err(fail)?;
    parse_search_response(&body, terms)
}

#[cfg(not(feature = "remote"))]
pub fn search_remote_at(_base_url: &str, terms: &[BigInt], _timeout: Duration) -> Result<Vec<OeisMatch>, OeisError> {
    check_terms(terms, 1)?;
    Err(OeisError::Offline("built without the `remote` feature".into()))
}
