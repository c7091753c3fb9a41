//! The snapshot fixture is checked against the defining formula of every
//! entry, then used for lookups of computed order sequences.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use linedigraph::oeis::{match_local, match_snapshot, OeisError, OeisMatch};
use linedigraph::sequences::{forbidden_word_digraph, order_sequence, ForbiddenWordSpec};
use num_bigint::BigInt;

const N: usize = 40;

fn fixture_path() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "tests", "data", "oeis-fixture.txt"].iter().collect()
}

fn fixture_entries() -> BTreeMap<String, Vec<i64>> {
    let text = std::fs::read_to_string(fixture_path()).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (id, data) = l.split_once(' ').unwrap();
            let terms = data.trim_matches(',').split(',').map(|t| t.parse().unwrap()).collect();
            (id.to_string(), terms)
        })
        .collect()
}

fn linear(init: &[i64], coeffs: &[i64], n: usize) -> Vec<i64> {
    let mut a = init.to_vec();
    while a.len() < n {
        let next = coeffs.iter().enumerate().map(|(i, c)| c * a[a.len() - 1 - i]).sum();
        a.push(next);
    }
    a.truncate(n);
    a
}

/// Binary strings of each length 0..n avoiding every word of `forbidden`.
fn avoiding(forbidden: &[&str], n: usize) -> Vec<i64> {
    (0..n)
        .map(|len| {
            (0u32..1 << len)
                .filter(|bits| {
                    let s: String = (0..len).map(|i| if bits >> (len - 1 - i) & 1 == 1 { '1' } else { '0' }).collect();
                    !forbidden.iter().any(|w| s.contains(w))
                })
                .count() as i64
        })
        .collect()
}

/// Power series of num/den with den[0] = 1.
fn series(num: &[i64], den: &[i64], n: usize) -> Vec<i64> {
    let mut a: Vec<i64> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = num.get(k).copied().unwrap_or(0);
        for i in 1..den.len().min(k + 1) {
            v -= den[i] * a[k - i];
        }
        a.push(v);
    }
    a
}

fn pisot_e(a0: i64, a1: i64, n: usize) -> Vec<i64> {
    let mut a = vec![a0, a1];
    while a.len() < n {
        let (p, q) = (a[a.len() - 2], a[a.len() - 1]);
        // nearest integer to q^2 / p
        a.push((2 * q * q + p) / (2 * p));
    }
    a
}

fn definitions() -> BTreeMap<&'static str, Vec<i64>> {
    let n = N;
    let mut m = BTreeMap::new();
    m.insert("A000012", vec![1; n]);
    m.insert("A000027", (1..=n as i64).collect());
    m.insert("A000032", linear(&[2, 1], &[1, 1], n));
    m.insert("A000045", linear(&[0, 1], &[1, 1], n));
    m.insert("A000073", linear(&[0, 0, 1], &[1, 1, 1], n));
    m.insert("A000079", (0..n as u32).map(|i| 1i64 << i).collect());
    m.insert("A000217", (0..n as i64).map(|i| i * (i + 1) / 2).collect());
    m.insert("A000930", linear(&[1, 1, 1], &[1, 0, 1], n));
    m.insert("A000931", linear(&[1, 0, 0], &[0, 1, 1], n));
    m.insert("A001333", linear(&[1, 1], &[2, 1], n));
    m.insert("A001651", (1..).filter(|k: &i64| k % 3 != 0).take(n).collect());
    m.insert("A003269", linear(&[0, 1, 1, 1], &[1, 0, 0, 1], n));
    m.insert("A005408", (0..n as i64).map(|i| 2 * i + 1).collect());
    m.insert("A010716", vec![5; n]);
    m.insert("A020711", pisot_e(5, 7, 30));
    // (1 - x)(1 - x^2 - x^3) = 1 - x - x^2 + x^4
    m.insert("A052954", series(&[2, -1, -1, -1], &[1, -1, -1, 0, 1], n));
    m.insert("A101101", [1, 5].into_iter().chain(std::iter::repeat(6)).take(n).collect());
    m.insert("A164316", avoiding(&["000", "001", "010"], 24));
    m.insert("A164317", avoiding(&["000", "010", "111"], 24));
    m
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn fixture_entries_match_their_definitions() {
    let fixture = fixture_entries();
    let defs = definitions();
    assert_eq!(fixture.keys().map(String::as_str).collect::<Vec<_>>(), defs.keys().copied().collect::<Vec<_>>());
    for (id, terms) in defs {
        assert_eq!(&fixture[id], &terms, "{id}");
    }
}

/// Forbidden sets in B(2,3), each with the OEIS entry its order sequence
/// belongs to.
const TABLE_ONE: [(&str, &str); 12] = [
    ("000,010,011", "A010716"),
    ("000,001,101", "A101101"),
    ("001,010,011", "A000027"),
    ("000,010,111", "A164317"),
    ("000,011,110", "A052954"),
    ("000,010,101", "A003269"),
    ("001,010,100", "A020711"),
    ("000,001,010", "A164316"),
    ("000,001,011", "A001651"),
    ("001,010,101", "A005408"),
    ("000,001,111", "A000931"),
    ("000,001,100", "A000045"),
];

#[test]
fn table_one_sequences_found_in_fixture() {
    let path = fixture_path();
    for (set, id) in TABLE_ONE {
        let words: Vec<&str> = set.split(',').collect();
        let spec = ForbiddenWordSpec::new(2, 3, &words).unwrap();
        let g = forbidden_word_digraph(&spec).unwrap();
        let report = order_sequence(&g, 7).unwrap();
        let found = match_local(&report.terms, &path, 8).unwrap();
        assert!(found.iter().any(|m| m.id == id), "{set}: {found:?}");
    }
}

#[test]
fn narayana_prefix_and_unlisted_row() {
    let path = fixture_path();
    let found = match_local(&big(&[4, 6, 9, 13, 19, 28, 41, 60]), &path, 8).unwrap();
    assert_eq!(
        found,
        vec![OeisMatch {
            id: "A000930".into(),
            offset: 5,
            matched_length: 8
        }]
    );
    for row in [[11, 16, 22, 30, 41, 55, 74, 99], [15, 19, 21, 25, 31, 38, 45, 55], [11, 16, 22, 29, 37, 46, 56, 67]] {
        assert!(match_local(&big(&row), &path, 8).unwrap().is_empty(), "{row:?}");
    }
}

#[test]
fn gzipped_snapshot_gives_same_matches() {
    let plain = std::fs::read(fixture_path()).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
    enc.write_all(&plain).unwrap();
    file.write_all(&enc.finish().unwrap()).unwrap();
    let q = big(&[7, 17, 41, 99, 239, 577, 1393, 3363]);
    assert_eq!(match_local(&q, file.path(), 8).unwrap(), match_local(&q, &fixture_path(), 8).unwrap());
    assert_eq!(match_local(&q, file.path(), 8).unwrap()[0].id, "A001333");
}

#[test]
fn unreadable_snapshots() {
    let q = big(&[1, 2, 3, 4, 5, 6, 7, 8]);
    let missing = match_local(&q, std::path::Path::new("/nonexistent/stripped"), 8);
    assert!(matches!(missing, Err(OeisError::DbUnreadable { .. })));
    let garbage = match_snapshot(&q, &b"A000001 ,1,2,x,\n"[..], 8);
    assert!(matches!(garbage, Err(OeisError::DbUnreadable { .. })));
    let short = match_local(&q[..3], &fixture_path(), 8);
    assert!(matches!(short, Err(OeisError::TooFewTerms { needed: 8, got: 3 })));
}

#[cfg(feature = "remote")]
mod remote {
    use super::big;
    use linedigraph::oeis::{search_remote_at, OeisError};
    use std::io::{BufRead, BufReader, Write};
    use std::net::TcpListener;
    use std::thread;
    use std::time::Duration;

    /// Serve one request with `body`, returning the request line.
    fn stub(status: &'static str, body: &'static str) -> (String, thread::JoinHandle<String>) {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base = format!("http://{}", listener.local_addr().unwrap());
        let handle = thread::spawn(move || {
            let (stream, _) = listener.accept().unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            let mut line = String::new();
            while reader.read_line(&mut line).unwrap() > 2 {
                line.clear();
            }
            let mut stream = stream;
            write!(
                stream,
                "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            )
            .unwrap();
            request_line
        });
        (base, handle)
    }

    #[test]
    fn search_against_stub() {
        let (base, handle) = stub(
            "200 OK",
            r#"[{"number": 930, "data": "1,1,1,2,3,4,6,9,13,19,28,41,60,88,129"},
                {"number": 45, "data": "0,1,1,2,3,5,8,13,21"}]"#,
        );
        let q = big(&[4, 6, 9, 13, 19, 28, 41, 60]);
        let found = search_remote_at(&base, &q, Duration::from_secs(5)).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].id, "A000930");
        assert_eq!(found[0].offset, 5);
        let request = handle.join().unwrap();
        assert!(request.starts_with("GET /search?q=4%2C6%2C9"), "{request}");
        assert!(request.contains("fmt=json"));
    }

    #[test]
    fn empty_result_and_server_error() {
        let (base, handle) = stub("200 OK", "null");
        let q = big(&[11, 16, 22, 30, 41, 55, 74, 99]);
        assert!(search_remote_at(&base, &q, Duration::from_secs(5)).unwrap().is_empty());
        handle.join().unwrap();
        let (base, handle) = stub("503 Service Unavailable", "{}");
        assert!(matches!(search_remote_at(&base, &q, Duration::from_secs(5)), Err(OeisError::Offline(_))));
        handle.join().unwrap();
    }

    #[test]
    fn silent_server_times_out() {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base = format!("http://{}", listener.local_addr().unwrap());
        let q = big(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let r = search_remote_at(&base, &q, Duration::from_millis(300));
        assert!(matches!(r, Err(OeisError::Timeout(_))), "{r:?}");
        drop(listener);
    }
}
