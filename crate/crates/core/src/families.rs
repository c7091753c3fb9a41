//! Generators for the digraph families.
//!
//! Word digraphs (De Bruijn, Kautz and their relatives) label vertex `v` with
//! a word over the symbols `0-9a-z`; vertices come in lexicographic order and
//! the arcs of a vertex in increasing order of the appended symbol, so the
//! output is byte-stable.

use std::fmt;

use crate::digraph::{Digraph, IterLimits};
use crate::error::{Error, Result};

/// Largest alphabet that has single-character symbols.
pub const MAX_ALPHABET: usize = 36;
/// Largest number of candidate words a word digraph may enumerate.
pub const MAX_WORDS: u64 = 1 << 26;

pub fn symbol(i: usize) -> char {
    std::char::from_digit(i as u32, MAX_ALPHABET as u32).expect("symbol index below 36")
}

pub fn symbol_value(c: char) -> Option<usize> {
    c.to_digit(MAX_ALPHABET as u32).map(|d| d as usize)
}

pub fn word_to_string(word: &[u8]) -> String {
    word.iter().map(|&s| symbol(s as usize)).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange(msg()))
    }
}

/// Shift digraph on the length-`len` words over `alphabet` symbols accepted
/// by `vertex_ok`, with an arc `a_1..a_len -> a_2..a_{len+1}` whenever the
/// target is a vertex and `arc_ok(a_1..a_{len+1})` holds.
pub fn word_digraph(
    alphabet: usize,
    len: usize,
    vertex_ok: impl Fn(&[u8]) -> bool,
    arc_ok: impl Fn(&[u8]) -> bool,
) -> Result<Digraph> {
    check((1..=MAX_ALPHABET).contains(&alphabet), || {
        format!("alphabet size {alphabet} must be in 1..={MAX_ALPHABET}")
    })?;
    check(len >= 1, || "word length must be at least 1".into())?;
    let total = (alphabet as u64)
        .checked_pow(len as u32)
        .filter(|&t| t <= MAX_WORDS)
        .ok_or_else(|| Error::ParamOutOfRange(format!("{alphabet}^{len} words exceed the cap of {MAX_WORDS}")))?
        as usize;

    let mut index = vec![u32::MAX; total];
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut word = vec![0u8; len];
    for slot in index.iter_mut() {
        if vertex_ok(&word) {
            *slot = words.len() as u32;
            words.push(word.clone());
        }
        // lexicographic successor
        for pos in (0..len).rev() {
            word[pos] += 1;
            if (word[pos] as usize) < alphabet {
                break;
            }
            word[pos] = 0;
        }
    }

    let encode = |w: &[u8]| w.iter().fold(0usize, |acc, &s| acc * alphabet + s as usize);
    let mut arcs = Vec::new();
    let mut extended = vec![0u8; len + 1];
    for (u, w) in words.iter().enumerate() {
        extended[..len].copy_from_slice(w);
        let shifted = encode(&w[1..]) * alphabet;
        for a in 0..alphabet {
            let target = index[shifted % total + a];
            if target == u32::MAX {
                continue;
            }
            extended[len] = a as u8;
            if arc_ok(&extended) {
                arcs.push((u, target as usize));
            }
        }
    }
    let labels = words.iter().map(|w| word_to_string(w)).collect();
    Digraph::new(words.len(), arcs, Some(labels))
}

fn no_adjacent_repeat(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// True iff `w` has a factor `xx` with `1 <= |x| <= max_half`.
pub fn has_square(w: &[u8], max_half: usize) -> bool {
    (1..=max_half.min(w.len() / 2)).any(|h| (0..=w.len() - 2 * h).any(|i| w[i..i + h] == w[i + h..i + 2 * h]))
}

/// De Bruijn digraph `B(sigma, n)`.
pub fn de_bruijn(sigma: usize, n: usize) -> Result<Digraph> {
    check(sigma >= 1 && n >= 1, || format!("B({sigma},{n}) needs sigma >= 1 and n >= 1"))?;
    Ok(word_digraph(sigma, n, |_| true, |_| true)?.with_name(format!("B({sigma},{n})")))
}

/// Kautz digraph `K(d, l)`: words over `d + 1` symbols, no two equal
/// consecutive symbols.
pub fn kautz(d: usize, l: usize) -> Result<Digraph> {
    check(d >= 1 && l >= 1, || format!("K({d},{l}) needs d >= 1 and l >= 1"))?;
    Ok(word_digraph(d + 1, l, no_adjacent_repeat, |_| true)?.with_name(format!("K({d},{l})")))
}

/// Cyclic Kautz digraph `CK(d, l)`: Kautz words with `a_1 != a_l`, arcs
/// when `a_{l+1}` differs from both `a_l` and `a_2`.
pub fn cyclic_kautz(d: usize, l: usize) -> Result<Digraph> {
    check(d >= 2 && l >= 3, || format!("CK({d},{l}) needs d >= 2 and l >= 3"))?;
    let g = word_digraph(
        d + 1,
        l,
        |w| no_adjacent_repeat(w) && w[0] != w[l - 1],
        |w| w[l] != w[l - 1] && w[l] != w[1],
    )?;
    Ok(g.with_name(format!("CK({d},{l})")))
}

/// SubKautz digraph `sK(d, l)`: Kautz vertices, arcs when `a_{l+1}` differs
/// from both `a_1` and `a_l`.
pub fn sub_kautz(d: usize, l: usize) -> Result<Digraph> {
    check(d >= 2 && l >= 2, || format!("sK({d},{l}) needs d >= 2 and l >= 2"))?;
    let g = word_digraph(d + 1, l, no_adjacent_repeat, |w| w[l] != w[0] && w[l] != w[l - 1])?;
    Ok(g.with_name(format!("sK({d},{l})")))
}

/// Square-free digraph `SF(d, l)`: length-`l` words over `d + 1` symbols
/// with no factor `xx`, arcs whenever the shifted word is also square-free.
pub fn square_free(d: usize, l: usize) -> Result<Digraph> {
    check(d >= 1 && l >= 2, || format!("SF({d},{l}) needs d >= 1 and l >= 2"))?;
    let g = word_digraph(d + 1, l, |w| !has_square(w, l / 2), |_| true)?;
    Ok(g.with_name(format!("SF({d},{l})")))
}

/// `C_n^*`: the cycle `i -> i+1 (mod n)` plus the arcs `0 -> j`, `2 <= j < n`.
pub fn star_cycle(n: usize) -> Result<Digraph> {
    check(n >= 3, || format!("C{n}* needs n >= 3"))?;
    let mut arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    arcs.extend((2..n).map(|j| (0, j)));
    Ok(Digraph::from_arcs(n, arcs)?.with_name(format!("C{n}*")))
}

/// Directed cycle `0 -> ... -> n-1 -> 0` with a source `w = n` sending an
/// arc to vertex 0 and a sink `z = n + 1` receiving one from vertex 0.
pub fn pendant_cycle(n: usize) -> Result<Digraph> {
    check(n >= 1, || "pendant cycle needs n >= 1".into())?;
    let (w, z) = (n, n + 1);
    let mut arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    arcs.push((w, 0));
    arcs.push((0, z));
    Ok(Digraph::from_arcs(n + 2, arcs)?.with_name(format!("G({n},2)")))
}

/// Unicyclic `G_{n,d}`: cycle vertices `0..n`, tree centres `n..2n` (centre
/// of cycle vertex `i` is `n + i`) and `d` leaves per centre after that.
pub fn unicyclic(n: usize, d: usize) -> Result<Digraph> {
    check(n >= 1 && d >= 1, || format!("unicyclic({n},{d}) needs n >= 1 and d >= 1"))?;
    let mut arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    arcs.extend((0..n).map(|i| (i, n + i)));
    for i in 0..n {
        arcs.extend((0..d).map(|j| (n + i, 2 * n + i * d + j)));
    }
    Ok(Digraph::from_arcs(n * (d + 2), arcs)?.with_name(format!("unicyclic({n},{d})")))
}

/// A strongly connected digraph with inner out-radius `r1` and inner
/// in-radius `r2`, for `r1 <= r2` normally `L^{r1-1}(C_n^*)` with
/// `n = 2(r2 - r1) + 3`, and the converse of `radii_digraph(r2, r1)` otherwise.
///
/// Line iteration does not always raise both radii, so the candidate is
/// measured. On a miss the iterates of `C_m^*` for `3 <= m <= n + 2` are
/// searched, and for `r1 = r2` the directed cycle of length `r1 + 1` is the
/// last resort.
pub fn radii_digraph(r1: usize, r2: usize) -> Result<Digraph> {
    radii_digraph_with(r1, r2, IterLimits::default())
}

pub fn radii_digraph_with(r1: usize, r2: usize, limits: IterLimits) -> Result<Digraph> {
    check(r1 >= 1 && r2 >= 1, || format!("radii ({r1},{r2}) must be positive"))?;
    if r1 > r2 {
        return Ok(radii_digraph_with(r2, r1, limits)?.converse());
    }
    let hits = |g: &Digraph| -> Result<bool> {
        let r = crate::metrics::metric_report(g)?;
        Ok((r.inner_out_radius as usize, r.inner_in_radius as usize) == (r1, r2))
    };
    let n = 2 * (r2 - r1) + 3;
    let (g, _) = star_cycle(n)?.line_iterate_with(r1 - 1, limits)?;
    if hits(&g)? {
        return Ok(g);
    }
    for m in 3..=n + 2 {
        let mut g = star_cycle(m)?;
        while crate::metrics::metric_report(&g)?.inner_out_radius as usize <= r1 {
            if hits(&g)? {
                return Ok(g);
            }
            g = g.line_iterate_with(1, limits)?.0;
        }
    }
    if r1 == r2 {
        let arcs = (0..=r1).map(|i| (i, (i + 1) % (r1 + 1))).collect();
        return Ok(Digraph::from_arcs(r1 + 1, arcs)?.with_name(format!("C{}", r1 + 1)));
    }
    Err(Error::ParamOutOfRange(format!("no construction found for radii ({r1},{r2})")))
}

/// A named family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    DeBruijn { sigma: usize, n: usize },
    Kautz { d: usize, l: usize },
    CyclicKautz { d: usize, l: usize },
    SubKautz { d: usize, l: usize },
    SquareFree { d: usize, l: usize },
    StarCycle { n: usize },
    PendantCycle { n: usize },
    Unicyclic { n: usize, d: usize },
    Radii { r1: usize, r2: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Digraph> {
        match *self {
            FamilySpec::DeBruijn { sigma, n } => de_bruijn(sigma, n),
            FamilySpec::Kautz { d, l } => kautz(d, l),
            FamilySpec::CyclicKautz { d, l } => cyclic_kautz(d, l),
            FamilySpec::SubKautz { d, l } => sub_kautz(d, l),
            FamilySpec::SquareFree { d, l } => square_free(d, l),
            FamilySpec::StarCycle { n } => star_cycle(n),
            FamilySpec::PendantCycle { n } => pendant_cycle(n),
            FamilySpec::Unicyclic { n, d } => unicyclic(n, d),
            FamilySpec::Radii { r1, r2 } => radii_digraph(r1, r2),
        }
    }

    /// Build a spec from its tag and positional parameters, in the order
    /// they appear in the family's name (`ck 2 4` is `CK(2,4)`).
    pub fn from_tag(tag: &str, params: &[usize]) -> Result<Self> {
        let arity = match tag {
            "starcycle" | "pendant" => 1,
            _ => 2,
        };
        if params.len() != arity {
            return Err(Error::ParamOutOfRange(format!(
                "family {tag} takes {arity} parameter(s), got {}",
                params.len()
            )));
        }
        let (a, b) = (params[0], params.get(1).copied().unwrap_or(0));
        Ok(match tag {
            "debruijn" => FamilySpec::DeBruijn { sigma: a, n: b },
            "kautz" => FamilySpec::Kautz { d: a, l: b },
            "ck" => FamilySpec::CyclicKautz { d: a, l: b },
            "subkautz" => FamilySpec::SubKautz { d: a, l: b },
            "sf" => FamilySpec::SquareFree { d: a, l: b },
            "starcycle" => FamilySpec::StarCycle { n: a },
            "pendant" => FamilySpec::PendantCycle { n: a },
            "unicyclic" => FamilySpec::Unicyclic { n: a, d: b },
            "radii" => FamilySpec::Radii { r1: a, r2: b },
            _ => return Err(Error::ParamOutOfRange(format!("unknown family {tag:?}"))),
        })
    }

    /// Short tag used on the command line.
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::DeBruijn { .. } => "debruijn",
            FamilySpec::Kautz { .. } => "kautz",
            FamilySpec::CyclicKautz { .. } => "ck",
            FamilySpec::SubKautz { .. } => "subkautz",
            FamilySpec::SquareFree { .. } => "sf",
            FamilySpec::StarCycle { .. } => "starcycle",
            FamilySpec::PendantCycle { .. } => "pendant",
            FamilySpec::Unicyclic { .. } => "unicyclic",
            FamilySpec::Radii { .. } => "radii",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::DeBruijn { sigma, n } => write!(f, "B({sigma},{n})"),
            FamilySpec::Kautz { d, l } => write!(f, "K({d},{l})"),
            FamilySpec::CyclicKautz { d, l } => write!(f, "CK({d},{l})"),
            FamilySpec::SubKautz { d, l } => write!(f, "sK({d},{l})"),
            FamilySpec::SquareFree { d, l } => write!(f, "SF({d},{l})"),
            FamilySpec::StarCycle { n } => write!(f, "C{n}*"),
            FamilySpec::PendantCycle { n } => write!(f, "G({n},2)"),
            FamilySpec::Unicyclic { n, d } => write!(f, "unicyclic({n},{d})"),
            FamilySpec::Radii { r1, r2 } => write!(f, "radii({r1},{r2})"),
        }
    }
}
