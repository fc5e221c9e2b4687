//! OEIS b-files: parsing, a verbatim on-disk cache, and cross-checks
//! against locally computed sequences.
//!
//! Four sequences are understood:
//!
//! | id        | meaning                                   | first index |
//! |-----------|-------------------------------------------|-------------|
//! | `A004016` | shell sizes of the hexagonal lattice       | 0           |
//! | `A004018` | shell sizes of the square lattice          | 0           |
//! | `A343771` | smallest `k` with `A004016(k) = 6n`        | 0           |
//! | `A018782` | smallest `k` with `A004018(k) = 4n`        | 0           |
//!
//! Excerpts of all four (`n ≤ 200`) are compiled in, so checks run
//! without a network.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repcount::{self, CountSieve, Form};

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("invalid sequence id {0:?}: expected 'A' followed by 6 digits")]
    InvalidId(String),
    #[error("unsupported sequence {0}; supported: A004016, A004018, A343771, A018782")]
    Unsupported(SeqId),
    #[error("line {line}: malformed b-file entry {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: duplicate index {n}")]
    DuplicateIndex { line: usize, n: u64 },
    #[error("b-file contains no entries")]
    Empty,
    #[error("{0} is not cached and offline mode forbids downloading it")]
    OfflineMiss(SeqId),
    #[error("network error fetching {url}: {message}")]
    Network { url: String, message: String },
    #[error("range {lo}..={hi} exceeds the {side} domain")]
    RangeOutOfDomain { lo: u64, hi: u64, side: &'static str },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Sequence id: `A` plus six digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SeqId(String);

impl SeqId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The `b`-prefixed stem used by the OEIS file layout, e.g. `b004016`.
    fn bfile_stem(&self) -> String {
        format!("b{}", &self.0[1..])
    }
}

impl FromStr for SeqId {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ok = s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if ok {
            Ok(SeqId(s.to_string()))
        } else {
            Err(OeisError::InvalidId(s.to_string()))
        }
    }
}

impl TryFrom<String> for SeqId {
    type Error = OeisError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SeqId> for String {
    fn from(id: SeqId) -> String {
        id.0
    }
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    LocalPath,
    Cache,
    Network,
    Vendored,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::LocalPath => "local-path",
            Source::Cache => "cache",
            Source::Network => "network",
            Source::Vendored => "vendored",
        }
    }
}

/// Parsed b-file. Indices are whatever the file lists; gaps are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub id: SeqId,
    pub entries: BTreeMap<u64, BigInt>,
    pub source: Source,
}

impl BFile {
    pub fn get(&self, n: u64) -> Option<&BigInt> {
        self.entries.get(&n)
    }

    /// Index range covered, ignoring gaps.
    pub fn domain(&self) -> RangeInclusive<u64> {
        let lo = *self.entries.keys().next().expect("non-empty by construction");
        let hi = *self.entries.keys().next_back().expect("non-empty by construction");
        lo..=hi
    }

    /// Canonical serialization: one `n a(n)` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, v) in &self.entries {
            out.push_str(&format!("{n} {v}\n"));
        }
        out
    }
}

/// Parses b-file text. `#` lines and blank lines are skipped.
pub fn parse_bfile(id: SeqId, text: &[u8], source: Source) -> Result<BFile, OeisError> {
    let text = String::from_utf8_lossy(text);
    let mut entries = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::Malformed { line, text: raw.to_string() };
        let mut fields = trimmed.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let n: u64 = n.parse().map_err(|_| malformed())?;
        let v: BigInt = v.parse().map_err(|_| malformed())?;
        if entries.insert(n, v).is_some() {
            return Err(OeisError::DuplicateIndex { line, n });
        }
    }
    if entries.is_empty() {
        return Err(OeisError::Empty);
    }
    Ok(BFile { id, entries, source })
}

pub fn read_bfile(id: SeqId, path: &Path) -> Result<BFile, OeisError> {
    let bytes = fs::read(path).map_err(|source| OeisError::Io { path: path.to_path_buf(), source })?;
    parse_bfile(id, &bytes, Source::LocalPath)
}

/// Something that can perform an HTTP GET.
pub trait Transport: Send + Sync {
    fn get(&self, url: &str) -> Result<Vec<u8>, OeisError>;
}

/// Blocking HTTPS transport.
#[derive(Debug)]
pub struct HttpTransport {
    agent: ureq::Agent,
}

impl Default for HttpTransport {
    fn default() -> Self {
        let agent = ureq::AgentBuilder::new().timeout(std::time::Duration::from_secs(30)).build();
        HttpTransport { agent }
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<Vec<u8>, OeisError> {
        let net = |message: String| OeisError::Network { url: url.to_string(), message };
        let resp = self.agent.get(url).call().map_err(|e| net(e.to_string()))?;
        let mut body = Vec::new();
        resp.into_reader().read_to_end(&mut body).map_err(|e| net(e.to_string()))?;
        Ok(body)
    }
}

pub fn bfile_url(id: &SeqId) -> String {
    format!("https://oeis.org/{id}/{}.txt", id.bfile_stem())
}

pub fn cache_path(cache_dir: &Path, id: &SeqId) -> PathBuf {
    cache_dir.join(format!("{id}.bfile"))
}

/// Cached read, else download (unless `offline`), cache verbatim, parse.
/// A cache entry that fails to parse is deleted.
pub fn fetch(id: &SeqId, cache_dir: &Path, offline: bool, transport: &dyn Transport) -> Result<BFile, OeisError> {
    let path = cache_path(cache_dir, id);
    let io = |source| OeisError::Io { path: path.clone(), source };
    if path.exists() {
        let bytes = fs::read(&path).map_err(io)?;
        return parse_bfile(id.clone(), &bytes, Source::Cache).inspect_err(|_| {
            let _ = fs::remove_file(&path);
        });
    }
    if offline {
        return Err(OeisError::OfflineMiss(id.clone()));
    }
    let bytes = transport.get(&bfile_url(id))?;
    let parsed = parse_bfile(id.clone(), &bytes, Source::Network)?;
    fs::create_dir_all(cache_dir).map_err(|source| OeisError::Io { path: cache_dir.to_path_buf(), source })?;
    let mut tmp = tempfile_in(cache_dir, id).map_err(io)?;
    tmp.1.write_all(&bytes).map_err(io)?;
    drop(tmp.1);
    fs::rename(&tmp.0, &path).map_err(io)?;
    Ok(parsed)
}

fn tempfile_in(dir: &Path, id: &SeqId) -> std::io::Result<(PathBuf, fs::File)> {
    let tmp = dir.join(format!(".{id}.{}.partial", std::process::id()));
    let file = fs::File::create(&tmp)?;
    Ok((tmp, file))
}

/// The four supported sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Known {
    A004016,
    A004018,
    A343771,
    A018782,
}

impl Known {
    pub const ALL: [Known; 4] = [Known::A004016, Known::A004018, Known::A343771, Known::A018782];

    pub fn from_id(id: &SeqId) -> Result<Known, OeisError> {
        Known::ALL
            .into_iter()
            .find(|k| k.id() == *id)
            .ok_or_else(|| OeisError::Unsupported(id.clone()))
    }

    pub fn id(&self) -> SeqId {
        SeqId(format!("{self:?}"))
    }

    pub fn form(&self) -> Form {
        match self {
            Known::A004016 | Known::A343771 => Form::Hex,
            Known::A004018 | Known::A018782 => Form::Square,
        }
    }

    /// Shell-size sequence, as opposed to a smallest-`k` sequence.
    pub fn is_shell(&self) -> bool {
        matches!(self, Known::A004016 | Known::A004018)
    }

    pub fn vendored_text(&self) -> &'static str {
        match self {
            Known::A004016 => include_str!("../data/oeis/A004016.bfile"),
            Known::A004018 => include_str!("../data/oeis/A004018.bfile"),
            Known::A343771 => include_str!("../data/oeis/A343771.bfile"),
            Known::A018782 => include_str!("../data/oeis/A018782.bfile"),
        }
    }

    pub fn vendored(&self) -> BFile {
        parse_bfile(self.id(), self.vendored_text().as_bytes(), Source::Vendored).expect("vendored excerpt parses")
    }
}

/// Values are serialized as decimal strings; b-file entries can exceed
/// any JSON number type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: u64,
    #[serde(with = "decimal")]
    pub expected: BigInt,
    /// `None` when nothing was found below the sieve limit.
    #[serde(with = "decimal_opt")]
    pub computed: Option<BigInt>,
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?.map(|t| t.parse().map_err(D::Error::custom)).transpose()
    }
}

/// Compares `bfile` and `computed` on every index of `range`.
pub fn crosscheck(
    bfile: &BFile,
    computed: &BTreeMap<u64, BigInt>,
    range: RangeInclusive<u64>,
) -> Result<Vec<Mismatch>, OeisError> {
    let (lo, hi) = (*range.start(), *range.end());
    let covers = |m: &BTreeMap<u64, BigInt>| lo <= hi && (lo..=hi).all(|n| m.contains_key(&n));
    if !covers(&bfile.entries) {
        return Err(OeisError::RangeOutOfDomain { lo, hi, side: "b-file" });
    }
    if !covers(computed) {
        return Err(OeisError::RangeOutOfDomain { lo, hi, side: "computed" });
    }
    Ok(range
        .filter_map(|n| {
            let (e, c) = (&bfile.entries[&n], &computed[&n]);
            (e != c).then(|| Mismatch { n, expected: e.clone(), computed: Some(c.clone()) })
        })
        .collect())
}

/// Shell sizes `|reps(form, n)|` for `n ∈ range`.
pub fn computed_shell_sizes(form: Form, range: RangeInclusive<u64>) -> BTreeMap<u64, BigInt> {
    range.map(|n| (n, BigInt::from(repcount::reps(form, n).len()))).collect()
}

/// Smallest-`k` sequence check. Entries whose expected value exceeds
/// `limit` agree when the sieve also finds nothing up to `limit`.
pub fn crosscheck_lowest(
    bfile: &BFile,
    form: Form,
    range: RangeInclusive<u64>,
    limit: u64,
) -> Result<Vec<Mismatch>, OeisError> {
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi || !(lo..=hi).all(|n| bfile.entries.contains_key(&n)) {
        return Err(OeisError::RangeOutOfDomain { lo, hi, side: "b-file" });
    }
    let firsts = CountSieve::new(form, limit).first_occurrences(&|_| false);
    let units = form.unit_count();
    let limit_big = BigInt::from(limit);
    Ok(range
        .filter_map(|n| {
            let expected = &bfile.entries[&n];
            let computed = firsts.get(&(units * n)).map(|&k| BigInt::from(k));
            let agree = match &computed {
                Some(c) => c == expected,
                None => *expected > limit_big,
            };
            (!agree).then(|| Mismatch { n, expected: expected.clone(), computed })
        })
        .collect())
}

/// Outcome of checking one supported sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub seq: SeqId,
    pub source: Source,
    pub range: (u64, u64),
    pub checked: u64,
    /// Entries beyond the sieve limit, confirmed only as "not below it".
    pub beyond_limit: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Cross-checks `bfile` (one of the supported sequences) on `[0, max_n]`.
pub fn check_known(bfile: &BFile, max_n: u64, limit: u64) -> Result<CheckOutcome, OeisError> {
    let known = Known::from_id(&bfile.id)?;
    let lo = *bfile.domain().start();
    let range = lo..=max_n;
    let mismatches = if known.is_shell() {
        crosscheck(bfile, &computed_shell_sizes(known.form(), range.clone()), range.clone())?
    } else {
        crosscheck_lowest(bfile, known.form(), range.clone(), limit)?
    };
    let beyond_limit = if known.is_shell() {
        0
    } else {
        let limit_big = BigInt::from(limit);
        range.clone().filter(|n| bfile.entries[n] > limit_big).count() as u64
    };
    Ok(CheckOutcome {
        seq: bfile.id.clone(),
        source: bfile.source,
        range: (lo, max_n),
        checked: max_n - lo + 1,
        beyond_limit,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Recording {
        calls: AtomicUsize,
        body: Vec<u8>,
    }

    impl Transport for Recording {
        fn get(&self, _url: &str) -> Result<Vec<u8>, OeisError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            Ok(self.body.clone())
        }
    }

    fn recording(body: &str) -> Recording {
        Recording { calls: AtomicUsize::new(0), body: body.as_bytes().to_vec() }
    }

    fn id(s: &str) -> SeqId {
        s.parse().unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn parses_examples() {
        let b = parse_bfile(id("A004016"), b"0 1\n1 6\n2 0\n3 6\n", Source::LocalPath).unwrap();
        assert_eq!(b.entries, BTreeMap::from([(0, big(1)), (1, big(6)), (2, big(0)), (3, big(6))]));
        let b = parse_bfile(id("A004018"), b"# comment\n1 4\n", Source::LocalPath).unwrap();
        assert_eq!(b.entries, BTreeMap::from([(1, big(4))]));
        assert!(matches!(
            parse_bfile(id("A004018"), b"1 4\n1 5\n", Source::LocalPath),
            Err(OeisError::DuplicateIndex { line: 2, n: 1 })
        ));
    }

    #[test]
    fn parse_errors() {
        let p = |t: &[u8]| parse_bfile(id("A004016"), t, Source::LocalPath);
        assert!(matches!(p(b"0 1\n1 x\n"), Err(OeisError::Malformed { line: 2, .. })));
        assert!(matches!(p(b"0 1 2\n"), Err(OeisError::Malformed { line: 1, .. })));
        assert!(matches!(p(b"-1 3\n"), Err(OeisError::Malformed { line: 1, .. })));
        assert!(matches!(p(b"# only\n\n"), Err(OeisError::Empty)));
        assert!(matches!(p(b""), Err(OeisError::Empty)));
    }

    #[test]
    fn big_values_and_gaps() {
        let b = parse_bfile(id("A343771"), b"3 123456789012345678901234567890\n10 7\n", Source::LocalPath).unwrap();
        assert_eq!(b.get(3).unwrap().to_string(), "123456789012345678901234567890");
        assert_eq!(b.domain(), 3..=10);
        assert!(b.get(4).is_none());
    }

    #[test]
    fn id_validation() {
        assert!("A004016".parse::<SeqId>().is_ok());
        for bad in ["X12345", "A12345", "A0040161", "a004016", "A00401x"] {
            assert!(matches!(bad.parse::<SeqId>(), Err(OeisError::InvalidId(_))), "{bad}");
        }
        assert!(matches!(Known::from_id(&id("A000001")), Err(OeisError::Unsupported(_))));
        assert_eq!(bfile_url(&id("A004016")), "https://oeis.org/A004016/b004016.txt");
    }

    #[test]
    fn offline_never_touches_transport() {
        let dir = tempfile::tempdir().unwrap();
        let t = recording("0 1\n");
        let err = fetch(&id("A004016"), dir.path(), true, &t).unwrap_err();
        assert!(matches!(err, OeisError::OfflineMiss(_)));
        fs::write(cache_path(dir.path(), &id("A004016")), "0 1\n1 6\n").unwrap();
        let b = fetch(&id("A004016"), dir.path(), true, &t).unwrap();
        assert_eq!(b.source, Source::Cache);
        assert_eq!(b.entries.len(), 2);
        assert_eq!(t.calls.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn online_fetch_caches_verbatim() {
        let dir = tempfile::tempdir().unwrap();
        let body = "# header\n0 1\n1 4\n";
        let t = recording(body);
        let b = fetch(&id("A004018"), dir.path(), false, &t).unwrap();
        assert_eq!(b.source, Source::Network);
        assert_eq!(fs::read_to_string(cache_path(dir.path(), &id("A004018"))).unwrap(), body);
        let again = fetch(&id("A004018"), dir.path(), false, &t).unwrap();
        assert_eq!(again.source, Source::Cache);
        assert_eq!(t.calls.load(Ordering::SeqCst), 1);
    }

    #[test]
    fn corrupt_cache_entry_is_removed() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), &id("A004016"));
        fs::write(&path, "0 1\nnot a line\n").unwrap();
        let t = recording("");
        assert!(matches!(fetch(&id("A004016"), dir.path(), true, &t), Err(OeisError::Malformed { line: 2, .. })));
        assert!(!path.exists());
    }

    #[test]
    fn bad_download_is_not_cached() {
        let dir = tempfile::tempdir().unwrap();
        let t = recording("<html>oops</html>\n");
        assert!(fetch(&id("A004016"), dir.path(), false, &t).is_err());
        assert!(!cache_path(dir.path(), &id("A004016")).exists());
    }

    #[test]
    fn crosscheck_shell_counts() {
        let hex = computed_shell_sizes(Form::Hex, 1..=100);
        let oracle: BTreeMap<u64, BigInt> = (1..=100u64).map(|n| (n, BigInt::from(repcount::u_of_k(n)))).collect();
        let b = BFile { id: id("A004016"), entries: oracle, source: Source::LocalPath };
        assert!(crosscheck(&b, &hex, 1..=100).unwrap().is_empty());

        let sq = computed_shell_sizes(Form::Square, 1..=100);
        let oracle: BTreeMap<u64, BigInt> = (1..=100u64).map(|n| (n, BigInt::from(repcount::v_of_k(n)))).collect();
        let mut b = BFile { id: id("A004018"), entries: oracle, source: Source::LocalPath };
        assert!(crosscheck(&b, &sq, 1..=100).unwrap().is_empty());

        let old = b.entries[&7].clone();
        b.entries.insert(7, big(99));
        assert_eq!(
            crosscheck(&b, &sq, 1..=100).unwrap(),
            vec![Mismatch { n: 7, expected: big(99), computed: Some(old) }]
        );
    }

    #[test]
    fn crosscheck_range_errors() {
        let b = Known::A004016.vendored();
        let c = computed_shell_sizes(Form::Hex, 0..=50);
        assert!(matches!(crosscheck(&b, &c, 0..=60), Err(OeisError::RangeOutOfDomain { side: "computed", .. })));
        assert!(matches!(crosscheck(&b, &c, 0..=500), Err(OeisError::RangeOutOfDomain { side: "b-file", .. })));
    }

    #[test]
    fn roundtrip() {
        for k in Known::ALL {
            let b = k.vendored();
            let again = parse_bfile(b.id.clone(), b.to_text().as_bytes(), Source::Vendored).unwrap();
            assert_eq!(again, b);
        }
    }

    #[test]
    fn index_conventions() {
        let a = Known::A004016.vendored();
        assert_eq!(a.get(0), Some(&big(1)));
        assert_eq!(Known::A004018.vendored().get(0), Some(&big(1)));
        let l = Known::A343771.vendored();
        assert_eq!((l.get(0), l.get(1), l.get(2)), (Some(&big(2)), Some(&big(1)), Some(&big(7))));
        let m = Known::A018782.vendored();
        assert_eq!((m.get(0), m.get(1), m.get(2)), (Some(&big(3)), Some(&big(1)), Some(&big(5))));
    }

    #[test]
    fn lowest_sequences_small_limit() {
        let b = Known::A343771.vendored();
        let out = crosscheck_lowest(&b, Form::Hex, 0..=20, 100_000).unwrap();
        assert!(out.is_empty(), "{out:?}");
        let b = Known::A018782.vendored();
        assert!(crosscheck_lowest(&b, Form::Square, 0..=20, 100_000).unwrap().is_empty());
    }

    proptest::proptest! {
        #[test]
        fn serialize_parse_roundtrip(entries in proptest::collection::btree_map(0u64..10_000, -1_000_000i64..1_000_000, 1..40)) {
            let b = BFile {
                id: id("A004016"),
                entries: entries.into_iter().map(|(n, v)| (n, BigInt::from(v))).collect(),
                source: Source::LocalPath,
            };
            let again = parse_bfile(b.id.clone(), b.to_text().as_bytes(), Source::LocalPath).unwrap();
            proptest::prop_assert_eq!(again, b);
        }
    }
}
