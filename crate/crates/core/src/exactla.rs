//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: adjacency and quotient matrices,
//! minimal polynomials, walk counts `s B^k j` and linear recurrences.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_scaled_identity(&mut self, c: &BigInt) {
        for i in 0..self.dim {
            self.entries[i * self.dim + i] += c;
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Entry `(u, v)` is the number of arcs `u -> v`.
pub fn adjacency_matrix(g: &Digraph) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zeros(n);
    for &(u, v) in g.arcs() {
        m.entries[u * n + v] += 1;
    }
    m
}

/// A forward-regular vertex partition with its quotient matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitablePartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: IntMatrix,
}

impl EquitablePartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn size_vector(&self) -> Vec<BigInt> {
        self.classes.iter().map(|c| BigInt::from(c.len())).collect()
    }
}

impl Serialize for EquitablePartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EquitablePartition", 3)?;
        st.serialize_field("classes", &self.classes)?;
        st.serialize_field("quotient", &self.quotient)?;
        st.serialize_field("sizes", &self.sizes())?;
        st.end()
    }
}

fn arc_profile(out: &[usize], class_of: &[usize]) -> Vec<(usize, usize)> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &v in out {
        let c = class_of[v];
        match counts.iter_mut().find(|(k, _)| *k == c) {
            Some(e) => e.1 += 1,
            None => counts.push((c, 1)),
        }
    }
    counts.sort_unstable();
    counts
}

fn quotient_of(g: &Digraph, classes: &[Vec<usize>], class_of: &[usize]) -> IntMatrix {
    let out = g.out_neighbors();
    let mut q = IntMatrix::zeros(classes.len());
    for (i, class) in classes.iter().enumerate() {
        for &v in &out[class[0]] {
            q.entries[i * classes.len() + class_of[v]] += 1;
        }
    }
    q
}

/// Coarsest partition reachable by splitting classes on their out-arc
/// profiles, starting from a single class. Classes are numbered in order of
/// their smallest vertex.
pub fn coarsest_equitable_partition(g: &Digraph) -> EquitablePartition {
    let n = g.order();
    let out = g.out_neighbors();
    let mut class_of = vec![0usize; n];
    let mut count = usize::from(n > 0);
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|v| {
                let key = (class_of[v], arc_profile(&out[v], &class_of));
                let fresh = ids.len();
                *ids.entry(key).or_insert(fresh)
            })
            .collect();
        let stable = ids.len() == count;
        count = ids.len();
        class_of = next;
        if stable {
            break;
        }
    }
    let mut classes = vec![Vec::new(); count];
    for (v, &c) in class_of.iter().enumerate() {
        classes[c].push(v);
    }
    let quotient = quotient_of(g, &classes, &class_of);
    EquitablePartition {
        classes,
        class_of,
        quotient,
    }
}

/// Check that `classes` is a forward-regular partition of `g` and return it
/// with its quotient matrix.
pub fn verify_regular(g: &Digraph, classes: &[Vec<usize>]) -> Result<EquitablePartition> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    for (c, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidPartition(format!("class {c} is empty")));
        }
        for &v in class {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if class_of[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} appears in two classes")));
            }
            class_of[v] = c;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} is in no class")));
    }
    let m = classes.len();
    let out = g.out_neighbors();
    let counts = |v: usize| {
        let mut row = vec![0usize; m];
        for &w in &out[v] {
            row[class_of[w]] += 1;
        }
        row
    };
    for class in classes {
        let expected = counts(class[0]);
        for &v in &class[1..] {
            let got = counts(v);
            if let Some(j) = (0..m).find(|&j| got[j] != expected[j]) {
                return Err(Error::NotRegular { vertex: v, class: j });
            }
        }
    }
    let quotient = quotient_of(g, classes, &class_of);
    Ok(EquitablePartition {
        classes: classes.to_vec(),
        class_of,
        quotient,
    })
}

/// Monic polynomial `x^r + c_{r-1} x^{r-1} + ... + c_0`; `coeffs` holds
/// `c_0..c_{r-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPolynomial {
    coeffs: Vec<BigInt>,
}

impl MonicPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        MonicPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0..c_{r-1}`, lowest degree first, without the leading 1.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Recurrence coefficients `alpha_i = -c_i`, lowest index first.
    pub fn alphas(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| -c).collect()
    }

    /// True iff the polynomial is `x^r`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        // Horner from the leading 1
        let mut acc = IntMatrix::identity(m.dim());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc.add_scaled_identity(c);
        }
        acc
    }
}

impl Serialize for MonicPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let all: Vec<String> = self
            .coeffs
            .iter()
            .map(ToString::to_string)
            .chain(std::iter::once("1".to_string()))
            .collect();
        all.serialize(s)
    }
}

fn power_of_x(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "x".into(),
        _ => format!("x^{i}"),
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.degree();
        if r == 0 {
            return f.write_str("1");
        }
        f.write_str(&power_of_x(r))?;
        for i in (0..r).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&power_of_x(i))?;
            } else {
                write!(f, "{a}{}", power_of_x(i))?;
            }
        }
        Ok(())
    }
}

fn flatten(m: &IntMatrix) -> Vec<BigRational> {
    m.entries.iter().map(|e| BigRational::from_integer(e.clone())).collect()
}

/// Minimal polynomial by finding the first power of `m` that is a rational
/// combination of the lower ones.
pub fn minimal_polynomial(m: &IntMatrix) -> MonicPolynomial {
    let n = m.dim();
    // reduced vector, pivot index, combination of powers it equals
    let mut basis: Vec<(Vec<BigRational>, usize, Vec<BigRational>)> = Vec::new();
    let mut power = IntMatrix::identity(n);
    for r in 0..=n {
        let mut v = flatten(&power);
        let mut comb = vec![BigRational::zero(); r + 1];
        comb[r] = BigRational::one();
        for (bv, pivot, bc) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &bv[*pivot];
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in comb.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => basis.push((v, pivot, comb)),
            None => {
                let coeffs = comb[..r]
                    .iter()
                    .map(|c| {
                        assert!(c.is_integer(), "minimal polynomial coefficient {c} is not an integer");
                        c.to_integer()
                    })
                    .collect();
                let poly = MonicPolynomial { coeffs };
                assert!(poly.eval_matrix(m).is_zero(), "minimal polynomial does not annihilate");
                return poly;
            }
        }
        power = power.mul(m);
    }
    unreachable!("the powers I..M^n are linearly dependent")
}

fn check_dims(b: &IntMatrix, s: &[BigInt]) -> Result<()> {
    if s.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: s.len(),
        });
    }
    Ok(())
}

/// `s B^k j^T`.
pub fn walk_count(b: &IntMatrix, s: &[BigInt], k: usize) -> Result<BigInt> {
    Ok(walk_counts(b, s, k)?.pop().expect("at least one term"))
}

/// `s B^i j^T` for `i = 0..=k`.
pub fn walk_counts(b: &IntMatrix, s: &[BigInt], k: usize) -> Result<Vec<BigInt>> {
    check_dims(b, s)?;
    let n = b.dim();
    let mut row = s.to_vec();
    let mut out = Vec::with_capacity(k + 1);
    for step in 0..=k {
        out.push(row.iter().sum());
        if step == k {
            break;
        }
        let mut next = vec![BigInt::zero(); n];
        for (i, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, acc) in next.iter_mut().enumerate() {
                let e = b.get(i, j);
                if !e.is_zero() {
                    *acc += x * e;
                }
            }
        }
        row = next;
    }
    Ok(out)
}

/// `j A^i j^T` for `i = 0..=k` straight from the arc list.
pub fn digraph_walk_counts(g: &Digraph, k: usize) -> Vec<BigInt> {
    let mut ends = vec![BigInt::one(); g.order()];
    let mut out = Vec::with_capacity(k + 1);
    for step in 0..=k {
        out.push(ends.iter().sum());
        if step == k {
            break;
        }
        let mut next = vec![BigInt::zero(); g.order()];
        for &(u, v) in g.arcs() {
            if !ends[u].is_zero() {
                next[v] += &ends[u];
            }
        }
        ends = next;
    }
    out
}

/// `n_k = alpha_{r-1} n_{k-1} + ... + alpha_0 n_{k-r}` for every `k >= start + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub order: usize,
    /// `alpha_{r-1}` first, i.e. `coefficients[i]` multiplies `n_{k-1-i}`.
    pub coefficients: Vec<BigRational>,
    pub start: usize,
    /// `n_0..n_{start+order-1}`.
    pub initial: Vec<BigInt>,
}

impl LinearRecurrence {
    /// The recurrence given by `m(x)`, valid from `k = r` on.
    pub fn from_minimal_polynomial(poly: &MonicPolynomial, initial: &[BigInt]) -> Result<Self> {
        let r = poly.degree();
        if initial.len() < r {
            return Err(Error::InsufficientTerms {
                needed: r,
                got: initial.len(),
            });
        }
        let coefficients = poly.alphas().into_iter().rev().map(BigRational::from_integer).collect();
        Ok(LinearRecurrence {
            order: r,
            coefficients,
            start: 0,
            initial: initial[..r].to_vec(),
        })
    }

    /// Integer coefficients when every `alpha_i` is an integer.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn next_term(&self, terms: &[BigRational]) -> BigRational {
        let k = terms.len();
        let mut acc = BigRational::zero();
        for (i, c) in self.coefficients.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &terms[k - 1 - i];
            }
        }
        acc
    }

    /// `n_0..n_{count-1}`, exact rationals.
    pub fn terms_rational(&self, count: usize) -> Vec<BigRational> {
        let mut terms: Vec<BigRational> = self
            .initial
            .iter()
            .take(count)
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        while terms.len() < count {
            let t = self.next_term(&terms);
            terms.push(t);
        }
        terms
    }

    /// `n_0..n_{count-1}`, or `None` if some term is not an integer.
    pub fn extend(&self, count: usize) -> Option<Vec<BigInt>> {
        self.terms_rational(count)
            .into_iter()
            .map(|t| t.is_integer().then(|| t.to_integer()))
            .collect()
    }

    pub fn term(&self, k: usize) -> Option<BigInt> {
        self.extend(k + 1).and_then(|mut t| t.pop())
    }
}

impl Serialize for LinearRecurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinearRecurrence", 3)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("start", &self.start)?;
        st.end()
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("n_k = ")?;
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "n_{{k-{}}}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Solve `a x = rhs` over the rationals; free variables are set to zero.
/// `None` when the system is inconsistent.
fn solve(mut a: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>, unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        rhs.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        let pivot_row = a[r].clone();
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for (x, p) in a[i][col..unknowns].iter_mut().zip(&pivot_row[col..unknowns]) {
                *x -= &f * p;
            }
            let t = &f * &rhs[r];
            rhs[i] -= t;
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rhs[i].clone();
    }
    Some(x)
}

/// Least-order linear recurrence satisfied by `terms`, with the smallest
/// start index for that order. At least one equation beyond the `r`
/// needed to pin down the coefficients must hold, so orders up to
/// `(len - 1) / 2` are tried.
pub fn minimal_recurrence(terms: &[BigInt]) -> Result<LinearRecurrence> {
    let len = terms.len();
    if len < 4 {
        return Err(Error::InsufficientTerms { needed: 4, got: len });
    }
    let q: Vec<BigRational> = terms.iter().cloned().map(BigRational::from_integer).collect();
    let max_order = (len - 1) / 2;
    for r in 1..=max_order {
        for start in 0..=(len - 2 * r - 1) {
            let a: Vec<Vec<BigRational>> = (start + r..len).map(|k| (1..=r).map(|i| q[k - i].clone()).collect()).collect();
            let rhs: Vec<BigRational> = (start + r..len).map(|k| q[k].clone()).collect();
            if let Some(coefficients) = solve(a, rhs, r) {
                return Ok(LinearRecurrence {
                    order: r,
                    coefficients,
                    start,
                    initial: terms[..start + r].to_vec(),
                });
            }
        }
    }
    Err(Error::NoRecurrenceFound { max_order })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn adjacency_counts_multiplicity() {
        let g = Digraph::from_arcs(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(adjacency_matrix(&g), m(&[&[2]]));
        let c3 = adjacency_matrix(&Digraph::cycle(3));
        assert_eq!(c3, m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
    }

    #[test]
    fn polynomial_display() {
        let a = m(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 0, 0]]);
        let p = minimal_polynomial(&a);
        assert_eq!(p.to_string(), "x^4 - x^3 - x");
        assert_eq!(p.coefficients(), big(&[0, -1, 0, -1]).as_slice());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["0","-1","0","-1","1"]"#);
        assert_eq!(MonicPolynomial::new(big(&[-6, 2])).to_string(), "x^2 + 2x - 6");
        assert_eq!(MonicPolynomial::new(vec![]).to_string(), "1");
    }

    #[test]
    fn small_minimal_polynomials() {
        assert_eq!(minimal_polynomial(&IntMatrix::identity(5)).to_string(), "x - 1");
        assert_eq!(minimal_polynomial(&IntMatrix::zeros(3)).to_string(), "x");
        assert_eq!(minimal_polynomial(&IntMatrix::zeros(0)).degree(), 0);
        // diag(2, 2, 3) has m(x) = (x-2)(x-3)
        let d = m(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(minimal_polynomial(&d).to_string(), "x^2 - 5x + 6");
        // Jordan block of size 3
        let j = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(minimal_polynomial(&j).to_string(), "x^3");
        assert_eq!(minimal_polynomial(&adjacency_matrix(&Digraph::cycle(4))).to_string(), "x^4 - 1");
    }

    #[test]
    fn quotient_polynomials() {
        for d in 2..=5i64 {
            let ck = m(&[&[1, d - 1, 0, 0], &[0, 0, 1, d - 2], &[1, d - 1, 0, 0], &[0, 0, 1, d - 2]]);
            let p = minimal_polynomial(&ck);
            assert_eq!(p.coefficients(), big(&[0, -1, -(d - 1)]).as_slice(), "CK d={d}");
            let sf = m(&[&[1, 1, d - 2, 0], &[0, 0, 0, d - 1], &[1, 1, d - 2, 0], &[1, 1, d - 2, 0]]);
            let p = minimal_polynomial(&sf);
            assert_eq!(p.coefficients(), big(&[0, -(d - 1), -(d - 1)]).as_slice(), "SF d={d}");
        }
        let nil = m(&[
            &[0, 3, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1, 0],
        ]);
        assert_eq!(minimal_polynomial(&nil).to_string(), "x^5");
    }

    #[test]
    fn walk_counts_of_quotients() {
        let b = m(&[&[0, 1, 1], &[0, 1, 1], &[1, 0, 0]]);
        assert_eq!(walk_counts(&b, &big(&[6, 6, 6]), 5).unwrap(), big(&[18, 30, 48, 78, 126, 204]));
        let d = 3i64;
        let ck = m(&[&[1, d - 1, 0, 0], &[0, 0, 1, d - 2], &[1, d - 1, 0, 0], &[0, 0, 1, d - 2]]);
        let s = big(&[(d + 1) * d, (d + 1) * d * (d - 1), (d + 1) * d * (d - 1), (d + 1) * d * (d - 1) * (d - 2)]);
        assert_eq!(walk_count(&ck, &s, 0).unwrap(), BigInt::from(84));
        assert_eq!(walk_count(&ck, &s, 1).unwrap(), BigInt::from(204));
        assert_eq!(walk_count(&IntMatrix::zeros(2), &big(&[4, 7]), 3).unwrap(), BigInt::zero());
        assert!(matches!(
            walk_count(&b, &big(&[1, 2]), 1),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn sparse_and_dense_walk_counts_agree() {
        let g = Digraph::from_arcs(4, vec![(0, 0), (0, 1), (1, 2), (2, 3), (3, 0), (3, 1)]).unwrap();
        let a = adjacency_matrix(&g);
        let dense = walk_counts(&a, &vec![BigInt::one(); 4], 10).unwrap();
        assert_eq!(digraph_walk_counts(&g, 10), dense);
        assert_eq!(dense[..8], big(&[4, 6, 9, 13, 19, 28, 41, 60])[..]);
    }

    #[test]
    fn refinement_of_unicyclic() {
        // cycle 0..3, centres 3..6, leaves 6..12
        let mut arcs: Vec<_> = (0..3).map(|i| (i, (i + 1) % 3)).collect();
        arcs.extend((0..3).map(|i| (i, 3 + i)));
        arcs.extend((0..3).flat_map(|i| [(3 + i, 6 + 2 * i), (3 + i, 7 + 2 * i)]));
        let g = Digraph::from_arcs(12, arcs).unwrap();
        let p = coarsest_equitable_partition(&g);
        assert_eq!(p.sizes(), vec![3, 3, 6]);
        assert_eq!(p.quotient, m(&[&[1, 1, 0], &[0, 0, 2], &[0, 0, 0]]));
        assert_eq!(minimal_polynomial(&p.quotient).to_string(), "x^3 - x^2");
    }

    #[test]
    fn regular_digraph_is_one_class() {
        let g = Digraph::from_arcs(2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let p = coarsest_equitable_partition(&g);
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.quotient, m(&[&[2]]));
        let empty = coarsest_equitable_partition(&Digraph::empty());
        assert!(empty.classes.is_empty());
    }

    #[test]
    fn verify_rejects_bad_partitions() {
        let c3 = Digraph::cycle(3);
        assert!(matches!(verify_regular(&c3, &[vec![0, 1], vec![2]]), Err(Error::NotRegular { vertex: 1, .. })));
        assert!(matches!(verify_regular(&c3, &[vec![0, 1]]), Err(Error::InvalidPartition(_))));
        assert!(matches!(verify_regular(&c3, &[vec![0, 1], vec![1, 2]]), Err(Error::InvalidPartition(_))));
        assert!(matches!(verify_regular(&c3, &[vec![0, 1, 2], vec![]]), Err(Error::InvalidPartition(_))));
        let p = verify_regular(&c3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(p.quotient, adjacency_matrix(&c3));
    }

    #[test]
    fn recurrences() {
        let r = minimal_recurrence(&big(&[18, 30, 48, 78, 126, 204])).unwrap();
        assert_eq!((r.order, r.start), (2, 0));
        assert_eq!(r.integer_coefficients().unwrap(), big(&[1, 1]));
        assert_eq!(r.to_string(), "n_k = n_{k-1} + n_{k-2}");

        let r = minimal_recurrence(&big(&[4, 6, 9, 13, 19, 28, 41, 60])).unwrap();
        assert_eq!(r.order, 3);
        assert_eq!(r.integer_coefficients().unwrap(), big(&[1, 0, 1]));
        assert_eq!(r.to_string(), "n_k = n_{k-1} + n_{k-3}");
        assert_eq!(r.term(15).unwrap(), BigInt::from(1278));

        let r = minimal_recurrence(&big(&[5, 5, 5, 5, 5])).unwrap();
        assert_eq!((r.order, r.start), (1, 0));
        assert_eq!(r.integer_coefficients().unwrap(), big(&[1]));

        // eventually constant: order 1 from index 1
        let r = minimal_recurrence(&big(&[5, 6, 6, 6, 6, 6])).unwrap();
        assert_eq!((r.order, r.start), (1, 1));
        assert_eq!(r.extend(8).unwrap(), big(&[5, 6, 6, 6, 6, 6, 6, 6]));

        let r = minimal_recurrence(&big(&[16, 18, 15, 9, 3, 0, 0, 0])).unwrap();
        assert_eq!((r.order, r.start), (1, 4));
        assert_eq!(r.to_string(), "n_k = 0");

        assert!(matches!(minimal_recurrence(&big(&[1, 2, 3])), Err(Error::InsufficientTerms { .. })));
        assert!(matches!(
            minimal_recurrence(&big(&[1, 2, 4, 9, 1])),
            Err(Error::NoRecurrenceFound { max_order: 2 })
        ));
    }

    #[test]
    fn recurrence_from_polynomial() {
        let p = MonicPolynomial::new(big(&[0, -1, -1]));
        let r = LinearRecurrence::from_minimal_polynomial(&p, &big(&[18, 30, 48])).unwrap();
        assert_eq!(r.extend(6).unwrap(), big(&[18, 30, 48, 78, 126, 204]));
        assert_eq!(r.to_string(), "n_k = n_{k-1} + n_{k-2}");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["coeffs"], serde_json::json!(["1", "1", "0"]));
        assert!(LinearRecurrence::from_minimal_polynomial(&p, &big(&[1])).is_err());
        let neg = LinearRecurrence {
            order: 2,
            coefficients: vec![BigRational::from_integer(2.into()), BigRational::from_integer((-1).into())],
            start: 0,
            initial: big(&[1, 2]),
        };
        assert_eq!(neg.to_string(), "n_k = 2 n_{k-1} - n_{k-2}");
        assert_eq!(neg.extend(5).unwrap(), big(&[1, 2, 3, 4, 5]));
    }
}
