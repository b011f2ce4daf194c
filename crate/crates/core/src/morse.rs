//! Morse-theoretic consistency checks for the critical points of a symmetric
//! tensor's form on `S^{n-1}`.
//!
//! If every critical point is nondegenerate, the counts `c_l` of critical points of
//! index `l` are tied to the Betti numbers of the sphere (`b_0 = b_{n-1} = 1`, all
//! others zero): the weak and strong Morse inequalities hold, the alternating sum
//! `sum (-1)^l c_l` equals the Euler characteristic (0 for even `n`, 2 for odd `n`),
//! and a count that differs from its Betti number forces a neighbouring count to be
//! positive. A histogram violating any of these comes from an incomplete search or a
//! degenerate tensor.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solver::EigenPair;

/// Counts `c_l` of critical points of index `l` on `S^{n-1}`, `l in 0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexHistogram {
    n: usize,
    counts: Vec<usize>,
}

impl IndexHistogram {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("the sphere S^(n-1) needs n >= 2, got {n}")));
        }
        Ok(Self { n, counts: vec![0; n] })
    }

    /// Histogram from `(index, count)` entries; indices outside `0..n` are rejected.
    pub fn from_counts(n: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut h = Self::new(n)?;
        for &(index, count) in entries {
            h.check_index(index)?;
            h.counts[index] += count;
        }
        Ok(h)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n {
            return Err(Error::Argument(format!("index {index} exceeds the dimension {} of the sphere", self.n - 1)));
        }
        Ok(())
    }

    pub fn add(&mut self, index: usize) -> Result<()> {
        self.check_index(index)?;
        self.counts[index] += 1;
        Ok(())
    }

    /// Removes one point of the given index; false if there was none.
    pub fn remove(&mut self, index: usize) -> bool {
        match self.counts.get_mut(index) {
            Some(c) if *c > 0 => {
                *c -= 1;
                true
            }
            _ => false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_l`, zero outside `0..n`.
    pub fn count(&self, index: isize) -> usize {
        if index < 0 {
            return 0;
        }
        self.counts.get(index as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn as_map(&self) -> BTreeMap<usize, usize> {
        self.counts.iter().copied().enumerate().collect()
    }
}

/// Betti numbers `b_0..b_{n-1}` of `S^{n-1}`.
pub fn betti_sphere(n: usize) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::Argument(format!("the sphere S^(n-1) needs n >= 2, got {n}")));
    }
    let mut b = vec![0; n];
    b[0] = 1;
    b[n - 1] = 1;
    Ok(b)
}

/// `sum (-1)^l c_l`.
pub fn parity_sum(h: &IndexHistogram) -> i64 {
    h.counts.iter().enumerate().map(|(l, &c)| if l % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Euler characteristic of `S^{n-1}`: 0 for even `n`, 2 for odd `n`.
pub fn expected_parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        0
    } else {
        2
    }
}

/// Passes iff the alternating index sum equals the Euler characteristic.
pub fn euler_parity_check(h: &IndexHistogram) -> (bool, i64) {
    let sum = parity_sum(h);
    (sum == expected_parity(h.n), sum)
}

/// Weak Morse inequalities `b_l <= c_l`.
pub fn weak_morse_check(h: &IndexHistogram) -> bool {
    let b = betti_sphere(h.n).expect("histogram has n >= 2");
    b.iter().zip(&h.counts).all(|(&bl, &cl)| bl <= cl)
}

/// Strong Morse inequalities: for every `l`,
/// `sum_{j<=l} (-1)^(l-j) b_j <= sum_{j<=l} (-1)^(l-j) c_j`.
pub fn strong_morse_check(h: &IndexHistogram) -> bool {
    strong_morse_failures(h).is_empty()
}

fn strong_morse_failures(h: &IndexHistogram) -> Vec<usize> {
    let b = betti_sphere(h.n).expect("histogram has n >= 2");
    let (mut sb, mut sc) = (0i64, 0i64);
    let mut failures = Vec::new();
    for (l, (&bl, &cl)) in b.iter().zip(&h.counts).enumerate() {
        sb = bl as i64 - sb;
        sc = cl as i64 - sc;
        if sb > sc {
            failures.push(l);
        }
    }
    failures
}

/// One item of the lacunary checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LacunaryItem {
    /// `"i"`, `"ii"`, `"iii"` or `"iv"`.
    pub item: String,
    /// Index the item is about.
    pub index: usize,
    pub passed: bool,
    /// The item cannot fail (its hypothesis refers to a count that does not exist).
    pub vacuous: bool,
}

/// Consequences of "`c_{l-1} = c_{l+1} = 0` implies `b_l = c_l`", with counts outside
/// `0..n` read as zero:
///
/// * (i) `c_0 != 1` implies `c_1 > 0`;
/// * (ii) for `2 <= l <= n-2` (where `b_l = 0`), `c_l > 0` implies `c_{l-1} + c_{l+1} > 0`;
/// * (iii) `c_n > 0` implies `c_{n-1} > 0`: vacuous, indices on `S^{n-1}` stop at `n-1`;
/// * (iv) `c_{n-1} != 1` implies `c_{n-2} + c_n > 0`, i.e. `c_{n-2} > 0`.
pub fn lacunary_checks(h: &IndexHistogram) -> Vec<LacunaryItem> {
    let n = h.n as isize;
    let c = |l: isize| h.count(l);
    let mut items = vec![LacunaryItem { item: "i".into(), index: 0, passed: c(0) == 1 || c(1) > 0, vacuous: false }];
    for l in 2..=(n - 2) {
        items.push(LacunaryItem {
            item: "ii".into(),
            index: l as usize,
            passed: c(l) == 0 || c(l - 1) + c(l + 1) > 0,
            vacuous: false,
        });
    }
    items.push(LacunaryItem { item: "iii".into(), index: n as usize, passed: true, vacuous: true });
    items.push(LacunaryItem {
        item: "iv".into(),
        index: (n - 1) as usize,
        passed: c(n - 1) == 1 || c(n - 2) + c(n) > 0,
        vacuous: false,
    });
    items
}

/// Verdicts of every check on one index histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseReport {
    pub n: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub parity_sum: i64,
    pub expected_parity: i64,
    pub betti: Vec<usize>,
    pub parity_ok: bool,
    pub weak_ok: bool,
    pub strong_ok: bool,
    pub lacunary_ok: bool,
    /// At least one critical point of top index `n-1`.
    pub top_index_ok: bool,
    pub lacunary: Vec<LacunaryItem>,
    pub violations: Vec<String>,
    pub consistent: bool,
}

impl MorseReport {
    pub fn from_histogram(h: &IndexHistogram) -> Self {
        let n = h.n;
        let betti = betti_sphere(n).expect("histogram has n >= 2");
        let (parity_ok, parity) = euler_parity_check(h);
        let expected = expected_parity(n);
        let weak_ok = weak_morse_check(h);
        let strong_fail = strong_morse_failures(h);
        let lacunary = lacunary_checks(h);
        let lacunary_ok = lacunary.iter().all(|i| i.passed);
        let top_index_ok = h.counts[n - 1] >= 1;

        let mut violations = Vec::new();
        if !parity_ok {
            violations.push(format!(
                "alternating index sum is {parity}, expected {expected}: critical-point set is \
                 provably incomplete or tensor is degenerate"
            ));
        }
        for (l, (&bl, &cl)) in betti.iter().zip(&h.counts).enumerate() {
            if cl < bl {
                violations.push(format!("weak Morse inequality fails at index {l}: c = {cl} < b = {bl}"));
            }
        }
        for l in &strong_fail {
            violations.push(format!("strong Morse inequality fails at index {l}"));
        }
        for item in lacunary.iter().filter(|i| !i.passed) {
            violations.push(format!("lacunary item ({}) fails at index {}", item.item, item.index));
        }
        if !top_index_ok {
            violations.push(format!("no critical point of top index {}", n - 1));
        }
        let consistent = parity_ok && weak_ok && strong_fail.is_empty() && lacunary_ok && top_index_ok;
        Self {
            n,
            histogram: h.as_map(),
            parity_sum: parity,
            expected_parity: expected,
            betti,
            parity_ok,
            weak_ok,
            strong_ok: strong_fail.is_empty(),
            lacunary_ok,
            top_index_ok,
            lacunary,
            violations,
            consistent,
        }
    }
}

/// Builds the index histogram of a classified, nondegenerate critical set on
/// `S^{n-1}` and runs every check.
pub fn audit<T: Scalar>(pairs: &[EigenPair<T>], n: usize) -> Result<MorseReport> {
    let mut h = IndexHistogram::new(n)?;
    for (i, pair) in pairs.iter().enumerate() {
        match (pair.index, pair.nondegenerate) {
            (Some(index), Some(true)) => h.add(index)?,
            (Some(_), _) => return Err(Error::Precondition(format!("pair {i} is a degenerate critical point"))),
            (None, _) => return Err(Error::Precondition(format!("pair {i} carries no Morse index"))),
        }
    }
    Ok(MorseReport::from_histogram(&h))
}
