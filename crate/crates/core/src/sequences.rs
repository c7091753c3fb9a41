//! Order and inner-diameter sequences of iterated line digraphs.
//!
//! Orders come from three independent routes that are cross-checked term by
//! term: building `L^k` directly, counting walks `j A^k j^T` on the arc list,
//! and the recurrence given by the minimal polynomial of an equitable
//! quotient. Words avoiding forbidden factors give a fourth, brute-force
//! count used as a test oracle.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::digraph::{Digraph, IterLimits};
use crate::error::{Disagreement, Error, Result};
use crate::exactla::{
    coarsest_equitable_partition, digraph_walk_counts, minimal_polynomial, minimal_recurrence, walk_counts,
    LinearRecurrence, MonicPolynomial,
};
use crate::families::{has_square, symbol_value, word_digraph, MAX_ALPHABET};
use crate::metrics::{classify_behavior, inner_diameter_sequence_with, Behavior};
use crate::oeis::OeisMatch;

/// Default cap on `sigma^L` for brute-force word enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 28;

/// Which shift digraph the forbidden words are removed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordBase {
    /// `B(sigma, n')`.
    DeBruijn,
    /// `SF(sigma - 1, n')`: only square-free windows.
    SquareFree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWordSpec {
    pub sigma: usize,
    pub window: usize,
    pub forbidden: Vec<String>,
    pub base: WordBase,
}

fn encode_word(word: &str, sigma: usize) -> Result<Vec<u8>> {
    let invalid = |reason: String| Error::InvalidWord {
        word: word.to_string(),
        reason,
    };
    if word.is_empty() {
        return Err(invalid("empty word".into()));
    }
    word.chars()
        .map(|c| match symbol_value(c) {
            Some(v) if v < sigma => Ok(v as u8),
            Some(v) => Err(invalid(format!("symbol {c} = {v} is not below the alphabet size {sigma}"))),
            None => Err(invalid(format!("{c:?} is not a symbol"))),
        })
        .collect()
}

fn encode_all(words: &[String], sigma: usize) -> Result<Vec<Vec<u8>>> {
    words.iter().map(|w| encode_word(w, sigma)).collect()
}

fn contains_factor(word: &[u8], factor: &[u8]) -> bool {
    factor.len() <= word.len() && word.windows(factor.len()).any(|w| w == factor)
}

fn avoids(word: &[u8], forbidden: &[Vec<u8>]) -> bool {
    !forbidden.iter().any(|f| contains_factor(word, f))
}

impl ForbiddenWordSpec {
    /// Words removed from `B(sigma, window)`.
    pub fn new(sigma: usize, window: usize, forbidden: &[&str]) -> Result<Self> {
        Self::build(sigma, window, forbidden, WordBase::DeBruijn)
    }

    /// Words removed from the square-free digraph `SF(d, window)`.
    pub fn square_free(d: usize, window: usize, forbidden: &[&str]) -> Result<Self> {
        Self::build(d + 1, window, forbidden, WordBase::SquareFree)
    }

    pub fn build(sigma: usize, window: usize, forbidden: &[&str], base: WordBase) -> Result<Self> {
        if !(1..=MAX_ALPHABET).contains(&sigma) {
            return Err(Error::ParamOutOfRange(format!("alphabet size {sigma} must be in 1..={MAX_ALPHABET}")));
        }
        let min_window = if base == WordBase::SquareFree { 2 } else { 1 };
        if window < min_window {
            return Err(Error::ParamOutOfRange(format!("window length must be at least {min_window}")));
        }
        let spec = ForbiddenWordSpec {
            sigma,
            window,
            forbidden: forbidden.iter().map(|w| w.to_string()).collect(),
            base,
        };
        for (w, code) in spec.forbidden.iter().zip(encode_all(&spec.forbidden, sigma)?) {
            if code.len() > window {
                return Err(Error::InvalidWord {
                    word: w.clone(),
                    reason: format!("longer than the window length {window}"),
                });
            }
        }
        Ok(spec)
    }

    fn encoded(&self) -> Vec<Vec<u8>> {
        encode_all(&self.forbidden, self.sigma).expect("validated at construction")
    }

    fn base_accepts(&self, window: &[u8]) -> bool {
        match self.base {
            WordBase::DeBruijn => true,
            WordBase::SquareFree => !has_square(window, self.window / 2),
        }
    }

    fn base_name(&self) -> String {
        match self.base {
            WordBase::DeBruijn => format!("B({},{})", self.sigma, self.window),
            WordBase::SquareFree => format!("SF({},{})", self.sigma - 1, self.window),
        }
    }
}

impl fmt::Display for ForbiddenWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} minus {{{}}}", self.base_name(), self.forbidden.join(","))
    }
}

/// Induced subdigraph of the base digraph on the labels containing no
/// forbidden word as a factor. May be empty.
pub fn forbidden_word_digraph(spec: &ForbiddenWordSpec) -> Result<Digraph> {
    let forbidden = spec.encoded();
    let g = word_digraph(
        spec.sigma,
        spec.window,
        |w| spec.base_accepts(w) && avoids(w, &forbidden),
        |_| true,
    )?;
    Ok(g.with_name(spec.to_string()))
}

fn for_each_word(sigma: usize, len: usize, cap: u64, mut visit: impl FnMut(&[u8])) -> Result<()> {
    let total = (sigma as u64).checked_pow(len as u32).filter(|&t| t <= cap);
    let Some(total) = total else {
        return Err(Error::EnumerationCapExceeded {
            alphabet: sigma,
            length: len,
            cap,
        });
    };
    let mut word = vec![0u8; len];
    for _ in 0..total {
        visit(&word);
        for pos in (0..len).rev() {
            word[pos] += 1;
            if (word[pos] as usize) < sigma {
                break;
            }
            word[pos] = 0;
        }
    }
    Ok(())
}

/// Number of length-`len` words over `sigma` symbols containing no word of
/// `forbidden` as a factor, by full enumeration.
pub fn count_avoiding_words(sigma: usize, len: usize, forbidden: &[&str]) -> Result<BigInt> {
    count_avoiding_words_with_cap(sigma, len, forbidden, DEFAULT_ENUMERATION_CAP)
}

pub fn count_avoiding_words_with_cap(sigma: usize, len: usize, forbidden: &[&str], cap: u64) -> Result<BigInt> {
    let words: Vec<String> = forbidden.iter().map(|w| w.to_string()).collect();
    let forbidden = encode_all(&words, sigma)?;
    let mut count = 0u64;
    for_each_word(sigma, len, cap, |w| {
        if avoids(w, &forbidden) {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

/// Number of length-`len` words whose every window of the spec's length is
/// a vertex of `forbidden_word_digraph(spec)`, by full enumeration.
pub fn count_window_words(spec: &ForbiddenWordSpec, len: usize, cap: u64) -> Result<BigInt> {
    let forbidden = spec.encoded();
    let n = spec.window;
    if len < n {
        return Err(Error::ParamOutOfRange(format!("word length {len} is shorter than the window {n}")));
    }
    let mut count = 0u64;
    for_each_word(spec.sigma, len, cap, |w| {
        if w.windows(n).all(|x| spec.base_accepts(x) && avoids(x, &forbidden)) {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Build every iterate.
    Direct,
    /// `j A^k j^T` on the arc list.
    Walk,
    /// Minimal polynomial of an equitable quotient.
    Recurrence,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Walk => "walk",
            Method::Recurrence => "recurrence",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrderOptions {
    pub methods: Vec<Method>,
    /// Direct iteration stops at these limits when another method can supply
    /// the remaining terms, and fails otherwise.
    pub limits: IterLimits,
}

impl Default for OrderOptions {
    fn default() -> Self {
        OrderOptions {
            methods: vec![Method::Direct, Method::Walk, Method::Recurrence],
            limits: IterLimits::default(),
        }
    }
}

/// How many terms one method produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MethodRun {
    pub method: Method,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Order,
    InnerDiameter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub source: String,
    /// Forbidden words, when the source is a forbidden-word digraph.
    pub forbidden: Option<Vec<String>>,
    pub kind: SequenceKind,
    pub terms: Vec<BigInt>,
    pub methods: Vec<MethodRun>,
    pub minimal_polynomial: Option<MonicPolynomial>,
    pub recurrence: Option<LinearRecurrence>,
    pub classification: Option<Behavior>,
    /// Empirical eventual period; only set for eventually periodic sources.
    pub period: Option<usize>,
    pub oeis_matches: Vec<OeisMatch>,
}

impl SequenceReport {
    pub fn terms_joined(&self, sep: &str) -> String {
        self.terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
    }

    /// First column of a table row.
    pub fn row_label(&self) -> String {
        match &self.forbidden {
            Some(words) => words.join(", "),
            None => self.source.clone(),
        }
    }

    pub fn oeis_cell(&self) -> String {
        if self.oeis_matches.is_empty() {
            "not in OEIS".into()
        } else {
            self.oeis_matches.iter().map(|m| m.id.as_str()).collect::<Vec<_>>().join(", ")
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn with_forbidden(mut self, spec: &ForbiddenWordSpec) -> Self {
        self.source = spec.to_string();
        self.forbidden = Some(spec.forbidden.clone());
        self
    }
}

impl Serialize for SequenceReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SequenceReport", 10)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("sequence", &self.kind)?;
        let terms: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        st.serialize_field("terms", &terms)?;
        st.serialize_field("methods", &self.methods)?;
        st.serialize_field("agreement", &true)?;
        st.serialize_field("minimal_polynomial", &self.minimal_polynomial)?;
        st.serialize_field("recurrence", &self.recurrence)?;
        st.serialize_field("classification", &self.classification)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("oeis_matches", &self.oeis_matches)?;
        st.end()
    }
}

/// Smallest `p <= len / 3` such that the last `3p` values are `p`-periodic.
pub fn detect_period<T: PartialEq>(values: &[T]) -> Option<usize> {
    let len = values.len();
    (1..=len / 3).find(|&p| (len - 3 * p..len - p).all(|i| values[i] == values[i + p]))
}

/// Orders of the first `limit` iterates that fit within `limits`.
fn direct_orders(g: &Digraph, k: usize, limits: IterLimits, strict: bool) -> Result<Vec<BigInt>> {
    let mut orders = vec![BigInt::from(g.order())];
    let mut current = g.clone();
    for _ in 0..k {
        match current.checked_line(limits) {
            Ok(next) => current = next,
            Err(e @ Error::ResourceLimit { .. }) if strict => return Err(e),
            Err(Error::ResourceLimit { .. }) => break,
            Err(e) => return Err(e),
        }
        orders.push(BigInt::from(current.order()));
    }
    Ok(orders)
}

/// The recurrence read off `m(B)` for an equitable quotient `B`, plus
/// the least-order recurrence the same sequence satisfies.
struct QuotientRecurrence {
    polynomial: MonicPolynomial,
    generator: LinearRecurrence,
    refined: LinearRecurrence,
}

fn quotient_recurrence(g: &Digraph) -> Result<QuotientRecurrence> {
    let partition = coarsest_equitable_partition(g);
    let polynomial = minimal_polynomial(&partition.quotient);
    let r = polynomial.degree();
    let initial = walk_counts(&partition.quotient, &partition.size_vector(), r.saturating_sub(1))?;
    let generator = LinearRecurrence::from_minimal_polynomial(&polynomial, &initial)?;
    // A fitted recurrence of order r' starting at k0 is exact once it holds on
    // r consecutive indices from k0 + r', since the difference sequence obeys
    // the order-r recurrence.
    let mut len = 3 * r + 24;
    let refined = loop {
        let terms = generator.extend(len).expect("integer recurrence");
        let fit = minimal_recurrence(&terms)?;
        if fit.start + fit.order + r <= len {
            break fit;
        }
        len *= 2;
    };
    Ok(QuotientRecurrence {
        polynomial,
        generator,
        refined,
    })
}

/// Minimal polynomial of an equitable quotient and the least-order
/// recurrence of the order sequence.
pub fn order_recurrence(g: &Digraph) -> Result<(MonicPolynomial, LinearRecurrence)> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    let q = quotient_recurrence(g)?;
    Ok((q.polynomial, q.refined))
}

pub fn order_sequence(g: &Digraph, k: usize) -> Result<SequenceReport> {
    order_sequence_with(g, k, &OrderOptions::default())
}

/// Orders `n_0..n_k` of `L^i g`, computed by every requested method and
/// cross-checked.
pub fn order_sequence_with(g: &Digraph, k: usize, options: &OrderOptions) -> Result<SequenceReport> {
    if g.is_empty() {
        return Err(Error::EmptyDigraph);
    }
    if options.methods.is_empty() {
        return Err(Error::ParamOutOfRange("no method selected".into()));
    }
    let mut results: Vec<(Method, Vec<BigInt>)> = Vec::new();
    let mut polynomial = None;
    let mut recurrence = None;
    let mut seen = Vec::new();
    for &method in &options.methods {
        if seen.contains(&method) {
            continue;
        }
        seen.push(method);
        let terms = match method {
            Method::Direct => direct_orders(g, k, options.limits, options.methods.iter().all(|&m| m == Method::Direct))?,
            Method::Walk => digraph_walk_counts(g, k),
            Method::Recurrence => {
                let q = quotient_recurrence(g)?;
                let terms = q.generator.extend(k + 1).expect("integer recurrence");
                polynomial = Some(q.polynomial);
                recurrence = Some(q.refined);
                terms
            }
        };
        results.push((method, terms));
    }

    let mut terms = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let values: Vec<(&'static str, &BigInt)> = results
            .iter()
            .filter_map(|(m, t)| t.get(i).map(|v| (m.name(), v)))
            .collect();
        let first = values[0].1;
        if values.iter().any(|(_, v)| *v != first) {
            let values = values.into_iter().map(|(m, v)| (m, v.clone())).collect();
            return Err(Error::MethodDisagreement {
                k: i,
                values: Disagreement(values),
            });
        }
        terms.push(first.clone());
    }

    let classification = classify_behavior(g)?;
    let period = match classification {
        Behavior::EventuallyPeriodic => detect_period(&terms),
        _ => None,
    };
    Ok(SequenceReport {
        source: g.name().unwrap_or("digraph").to_string(),
        forbidden: None,
        kind: SequenceKind::Order,
        terms,
        methods: results
            .iter()
            .map(|(m, t)| MethodRun {
                method: *m,
                terms: t.len().min(k + 1),
            })
            .collect(),
        minimal_polynomial: polynomial,
        recurrence,
        classification: Some(classification),
        period,
        oeis_matches: Vec::new(),
    })
}

pub fn inner_diameter_report(g: &Digraph, k: usize) -> Result<SequenceReport> {
    inner_diameter_report_with(g, k, IterLimits::default())
}

/// Inner diameters `d_0..d_k` (fewer if an iterate is empty), with the
/// behaviour class and, for eventually periodic sources, the empirical
/// period of the computed prefix.
pub fn inner_diameter_report_with(g: &Digraph, k: usize, limits: IterLimits) -> Result<SequenceReport> {
    let classification = classify_behavior(g)?;
    let seq = inner_diameter_sequence_with(g, k, limits)?;
    let period = match classification {
        Behavior::EventuallyPeriodic => detect_period(&seq.values),
        _ => None,
    };
    Ok(SequenceReport {
        source: g.name().unwrap_or("digraph").to_string(),
        forbidden: None,
        kind: SequenceKind::InnerDiameter,
        terms: seq.values.iter().map(|&d| BigInt::from(d)).collect(),
        methods: vec![MethodRun {
            method: Method::Direct,
            terms: seq.values.len(),
        }],
        minimal_polynomial: None,
        recurrence: None,
        classification: Some(classification),
        period,
        oeis_matches: Vec::new(),
    })
}

/// `a + b sqrt(delta)` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq)]
struct Surd {
    a: BigRational,
    b: BigRational,
}

impl Surd {
    fn rational(a: BigInt) -> Self {
        Surd {
            a: BigRational::from_integer(a),
            b: BigRational::zero(),
        }
    }

    fn new(a: BigInt, b: BigInt) -> Self {
        Surd {
            a: BigRational::from_integer(a),
            b: BigRational::from_integer(b),
        }
    }

    fn add(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn mul(&self, o: &Surd, delta: &BigRational) -> Surd {
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * delta,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn inv(&self, delta: &BigRational) -> Surd {
        let norm = &self.a * &self.a - &self.b * &self.b * delta;
        assert!(!norm.is_zero(), "division by zero in Q(sqrt(delta))");
        Surd {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }

    fn pow(&self, mut e: usize, delta: &BigRational) -> Surd {
        let mut base = self.clone();
        let mut acc = Surd::rational(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, delta);
            }
            base = base.mul(&base, delta);
            e >>= 1;
        }
        acc
    }
}

/// The closed formula for the order of `L^k(CK(d, 4))`, evaluated exactly in
/// `Q(sqrt(delta))`, `delta = d^2 - 2d + 5`.
pub fn ck4_closed_form(d: u64, k: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::ParamOutOfRange(format!("CK(d,4) needs d >= 2, got {d}")));
    }
    let d = BigInt::from(d);
    let delta_int = &d * &d - BigInt::from(2) * &d + 5;
    let delta = BigRational::from_integer(delta_int);
    let sqrt = Surd::new(BigInt::zero(), BigInt::one());
    let d2d: BigInt = &d * &d + &d;
    let tail: BigInt = &d * &d * &d + &d + 2;
    let num_minus = Surd::new(-tail.clone(), d2d.clone());
    let num_plus = Surd::new(tail, d2d);
    let one_minus_d = BigInt::one() - &d;
    let den_minus = Surd::new(one_minus_d.clone(), -BigInt::one()).pow(k + 1, &delta);
    let den_plus = Surd::new(one_minus_d, BigInt::one()).pow(k + 1, &delta);
    let inner = num_minus
        .mul(&den_minus.inv(&delta), &delta)
        .add(&num_plus.mul(&den_plus.inv(&delta), &delta));
    let scale = Surd::rational(BigInt::from(2).pow(k as u32) * &d).mul(&sqrt.inv(&delta), &delta);
    let value = scale.mul(&inner, &delta);
    assert!(value.b.is_zero() && value.a.is_integer(), "closed form is not an integer: {value:?}");
    Ok(value.a.to_integer())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rows of forbidden words, sequence prefix and OEIS verdict.
pub fn render_table(reports: &[SequenceReport], format: TableFormat) -> String {
    let mut out = String::new();
    let rows = reports.iter().map(|r| (r.row_label(), format!("{}, ...", r.terms_joined(", ")), r.oeis_cell()));
    match format {
        TableFormat::Markdown => {
            out.push_str("| Forbidden subwords | Sequence | OEIS |\n|---|---|---|\n");
            for (a, b, c) in rows {
                writeln!(out, "| {a} | {b} | {c} |").unwrap();
            }
        }
        TableFormat::Csv => {
            out.push_str("forbidden_subwords,sequence,oeis\n");
            for (a, b, c) in rows {
                writeln!(out, "{},{},{}", csv_field(&a), csv_field(&b), csv_field(&c)).unwrap();
            }
        }
    }
    out
}
