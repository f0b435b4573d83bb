//! Cost functions and their exact solution spectra.
//!
//! A [`WeightSet`] defines a linear cost function `C(Z) = Σ W_i z_i` over
//! exact rationals. A [`CostSpectrum`] is the full tally of distinct cost
//! values `C_j` with their degeneracies `N_j` over all `2^N` bit strings,
//! built either by brute-force enumeration (any cost function) or by
//! subset-sum counting (linear cost functions, practical at 40 qubits).
//!
//! Cost values are exact rationals throughout, so half-integer means and
//! class binning never suffer float drift.

use std::collections::BTreeMap;
use std::io::Write;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::bits;
use crate::error::{Error, Result};

/// Exact cost value.
pub type Cost = Rational64;

/// Largest qubit count accepted by the brute-force spectrum builder.
pub const BRUTE_FORCE_QUBIT_LIMIT: u32 = 24;
/// Largest qubit count accepted by the subset-sum counting builder. Keeps
/// every degeneracy below 2^53 so downstream float conversions stay exact.
pub const DP_QUBIT_LIMIT: u32 = 48;
/// Cap on the scaled integer sum range the counting table may span.
const DP_RANGE_LIMIT: i128 = 1 << 27;

/// Parse a rational from an integer, decimal, or `p/q` literal, exactly.
pub fn parse_exact(text: &str) -> Result<Cost> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty number literal"));
    }
    if s.contains('/') {
        return s
            .parse::<Rational64>()
            .map_err(|e| Error::invalid(format!("bad rational literal {s:?}: {e}")));
    }
    // Split off a decimal exponent if present.
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..]
                .parse()
                .map_err(|e| Error::invalid(format!("bad exponent in {s:?}: {e}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['+', '-'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::invalid(format!("bad number literal {s:?}")));
    }
    let mut numer: i64 = digits
        .parse()
        .map_err(|_| Error::invalid(format!("number literal {s:?} overflows")))?;
    if negative {
        numer = -numer;
    }
    let scale = frac_part.len() as i32 - exp;
    let pow10 = |k: u32| -> Result<i64> {
        10i64
            .checked_pow(k)
            .ok_or_else(|| Error::invalid(format!("number literal {s:?} overflows")))
    };
    if scale >= 0 {
        Ok(Rational64::new(numer, pow10(scale as u32)?))
    } else {
        let factor = pow10((-scale) as u32)?;
        let numer = numer
            .checked_mul(factor)
            .ok_or_else(|| Error::invalid(format!("number literal {s:?} overflows")))?;
        Ok(Rational64::from_integer(numer))
    }
}

/// Weights of a linear cost function, with the derived sums used everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    weights: Vec<Cost>,
    w_sum: Cost,
    n_prime: u64,
}

impl WeightSet {
    pub fn new(weights: Vec<Cost>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("a weight set needs at least one weight"));
        }
        let n = weights.len() as u64;
        let w_sum = weights.iter().sum();
        Ok(WeightSet {
            weights,
            w_sum,
            n_prime: n * (n + 1) / 2,
        })
    }

    /// The ramp `{1, 2, ..., n}`.
    pub fn ramp(n: u32) -> Self {
        WeightSet::new((1..=n as i64).map(Rational64::from_integer).collect())
            .expect("n >= 1 makes a valid weight set")
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        WeightSet::new(
            weights
                .iter()
                .map(|&w| Rational64::from_integer(w))
                .collect(),
        )
    }

    /// Read `{"weights": [...]}` where entries are JSON numbers or decimal
    /// strings, both parsed exactly.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("bad weight file: {e}")))?;
        let entries = value
            .get("weights")
            .and_then(|w| w.as_array())
            .ok_or_else(|| Error::invalid("weight file must contain a \"weights\" array"))?;
        let mut weights = Vec::with_capacity(entries.len());
        for entry in entries {
            let literal = match entry {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => {
                    return Err(Error::invalid(format!(
                        "weight entries must be numbers or strings, got {other}"
                    )))
                }
            };
            weights.push(parse_exact(&literal)?);
        }
        WeightSet::new(weights)
    }

    pub fn n_qubits(&self) -> u32 {
        self.weights.len() as u32
    }

    pub fn weights(&self) -> &[Cost] {
        &self.weights
    }

    pub fn w_sum(&self) -> Cost {
        self.w_sum
    }

    /// `N' = N(N+1)/2`, the angle normalizer of the scaled oracle circuit.
    pub fn n_prime(&self) -> u64 {
        self.n_prime
    }

    /// `C(Z) = Σ W_i z_i` for a packed basis index.
    pub fn evaluate_index(&self, index: u64) -> Cost {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| index >> i & 1 == 1)
            .map(|(_, w)| w)
            .sum()
    }

    /// `C(Z) = Σ W_i z_i` for a bit string (leftmost character = first weight).
    pub fn evaluate(&self, z: &str) -> Result<Cost> {
        let index = bits::index_of_bitstring(z, self.n_qubits())?;
        Ok(self.evaluate_index(index))
    }

    /// `(C(Z) + C(¬Z)) / 2`, which equals `W_sum / 2` for every `Z`.
    pub fn inverse_pair_mean(&self, z: &str) -> Result<Cost> {
        let index = bits::index_of_bitstring(z, self.n_qubits())?;
        let inverse = bits::invert_index(index, self.n_qubits());
        Ok((self.evaluate_index(index) + self.evaluate_index(inverse)) / 2)
    }
}

/// Fixed problem instances used by the bundled experiments and tests.
pub mod presets {
    use super::WeightSet;

    /// Positive ramp `1..=n`.
    pub fn ramp(n: u32) -> WeightSet {
        WeightSet::ramp(n)
    }

    /// 20 signed integer weights (10 negative, 10 positive).
    pub fn signed_20() -> WeightSet {
        WeightSet::from_integers(&[
            -44, -35, -33, -32, -23, -20, -11, -11, -10, -4, 2, 6, 9, 11, 11, 17, 21, 34, 40, 43,
        ])
        .expect("static weights are valid")
    }

    /// 41 signed integer weights (14 negative, 27 positive).
    pub fn signed_41() -> WeightSet {
        WeightSet::from_integers(&[
            -731, -722, -676, -668, -663, -662, -564, -563, -555, -409, -209, -189, -135, -43, 1,
            3, 28, 48, 73, 127, 139, 156, 160, 286, 307, 308, 427, 461, 490, 512, 548, 551, 568,
            583, 589, 642, 776, 917, 929, 948, 949,
        ])
        .expect("static weights are valid")
    }
}

/// Distinct cost values with their degeneracies: the problem skeleton the
/// collective-state simulator runs on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostSpectrum {
    values: Vec<Cost>,
    counts: Vec<u64>,
    c_bar: Cost,
    n_qubits: u32,
}

impl CostSpectrum {
    /// Enumerate all `2^N` bit strings, grouping equal cost values exactly.
    /// Accepts arbitrary cost functions through the closure.
    pub fn brute_force<F: Fn(u64) -> Cost>(cost_fn: F, n_qubits: u32) -> Result<Self> {
        if n_qubits == 0 || n_qubits > BRUTE_FORCE_QUBIT_LIMIT {
            return Err(Error::Capacity {
                what: "brute-force spectrum construction",
                limit: BRUTE_FORCE_QUBIT_LIMIT,
                got: n_qubits,
            });
        }
        let mut classes: BTreeMap<Cost, u64> = BTreeMap::new();
        for index in 0..1u64 << n_qubits {
            *classes.entry(cost_fn(index)).or_insert(0) += 1;
        }
        Self::from_classes(classes, n_qubits)
    }

    /// Brute-force construction for real-valued cost functions. Classes are
    /// merged when they differ by at most `1e-9 * max|C|`; the stored values
    /// are rational approximations of the class representatives, so unlike
    /// every other constructor this one is approximate.
    pub fn brute_force_real<F: Fn(u64) -> f64>(cost_fn: F, n_qubits: u32) -> Result<Self> {
        if n_qubits == 0 || n_qubits > BRUTE_FORCE_QUBIT_LIMIT {
            return Err(Error::Capacity {
                what: "brute-force spectrum construction",
                limit: BRUTE_FORCE_QUBIT_LIMIT,
                got: n_qubits,
            });
        }
        let mut evaluations: Vec<f64> = (0..1u64 << n_qubits).map(cost_fn).collect();
        if evaluations.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("cost function produced a non-finite value"));
        }
        evaluations.sort_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
        let max_abs = evaluations.iter().fold(0f64, |acc, v| acc.max(v.abs()));
        let tolerance = 1e-9 * max_abs;
        let mut classes: Vec<(f64, u64)> = Vec::new();
        for v in evaluations {
            match classes.last_mut() {
                Some((rep, count)) if (v - *rep).abs() <= tolerance => *count += 1,
                _ => classes.push((v, 1)),
            }
        }
        let map: BTreeMap<Cost, u64> = classes
            .into_iter()
            .map(|(rep, count)| {
                let value = Rational64::approximate_float(rep)
                    .ok_or_else(|| Error::invalid(format!("cannot represent cost {rep}")))?;
                Ok((value, count))
            })
            .collect::<Result<_>>()?;
        Self::from_classes(map, n_qubits)
    }

    /// Exact spectrum of a linear cost function by subset-sum counting.
    /// Weights are scaled to integers by their common denominator first.
    /// Agrees with [`CostSpectrum::brute_force`] wherever both run, and
    /// handles 40-qubit instances in well under a second.
    pub fn from_weights(w: &WeightSet) -> Result<Self> {
        let n = w.n_qubits();
        if n > DP_QUBIT_LIMIT {
            return Err(Error::Capacity {
                what: "subset-sum spectrum construction",
                limit: DP_QUBIT_LIMIT,
                got: n,
            });
        }
        let mut denom: i64 = 1;
        for weight in w.weights() {
            denom = denom.lcm(weight.denom());
            if denom > 1 << 30 {
                return Err(Error::invalid(
                    "weight denominators too large for exact integer scaling",
                ));
            }
        }
        let scaled: Vec<i64> = w
            .weights()
            .iter()
            .map(|weight| {
                (denom / weight.denom())
                    .checked_mul(*weight.numer())
                    .ok_or_else(|| Error::invalid("scaled weight overflows"))
            })
            .collect::<Result<_>>()?;
        let neg: i128 = scaled.iter().filter(|&&v| v < 0).map(|&v| v as i128).sum();
        let pos: i128 = scaled.iter().filter(|&&v| v > 0).map(|&v| v as i128).sum();
        let range = pos - neg + 1;
        if range > DP_RANGE_LIMIT {
            return Err(Error::invalid(format!(
                "scaled weight range {range} exceeds the counting-table limit"
            )));
        }
        let range = range as usize;
        let offset = -neg as usize; // table slot of sum zero
        let mut table = vec![0u64; range];
        table[offset] = 1;
        // In-place subset-sum counting; iteration direction keeps each update
        // from reusing items within the same pass.
        for &weight in &scaled {
            if weight > 0 {
                let shift = weight as usize;
                for s in (shift..range).rev() {
                    table[s] += table[s - shift];
                }
            } else if weight < 0 {
                let shift = (-weight) as usize;
                for s in 0..range - shift {
                    table[s] += table[s + shift];
                }
            } else {
                for entry in table.iter_mut() {
                    *entry *= 2;
                }
            }
        }
        let mut values = Vec::new();
        let mut counts = Vec::new();
        for (slot, &count) in table.iter().enumerate() {
            if count > 0 {
                let raw = slot as i64 - (-neg) as i64;
                values.push(Rational64::new(raw, denom));
                counts.push(count);
            }
        }
        Self::from_parts(values, counts, n)
    }

    /// Two-class spectrum `{0: unmarked, 1: marked}`: the standard-search
    /// oracle expressed in the same representation as every cost oracle.
    pub fn grover(n_qubits: u32, n_marked: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > DP_QUBIT_LIMIT {
            return Err(Error::Capacity {
                what: "two-class spectrum construction",
                limit: DP_QUBIT_LIMIT,
                got: n_qubits,
            });
        }
        let total = 1u64 << n_qubits;
        if n_marked == 0 || n_marked >= total {
            return Err(Error::invalid(format!(
                "marked count must satisfy 1 <= N_m < 2^N, got {n_marked} of {total}"
            )));
        }
        Self::from_parts(
            vec![Rational64::zero(), Rational64::from_integer(1)],
            vec![total - n_marked, n_marked],
            n_qubits,
        )
    }

    fn from_classes(classes: BTreeMap<Cost, u64>, n_qubits: u32) -> Result<Self> {
        let (values, counts) = classes.into_iter().unzip();
        Self::from_parts(values, counts, n_qubits)
    }

    fn from_parts(values: Vec<Cost>, counts: Vec<u64>, n_qubits: u32) -> Result<Self> {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        let total: u64 = counts.iter().sum();
        debug_assert_eq!(total, 1u64 << n_qubits);
        // c_bar = (1/2^N) Σ N_j C_j, computed over a common denominator so the
        // division is exact.
        let mut denom: i64 = 1;
        for v in &values {
            denom = denom.lcm(v.denom());
        }
        let weighted: i128 = values
            .iter()
            .zip(&counts)
            .map(|(v, &c)| (v.numer() * (denom / v.denom())) as i128 * c as i128)
            .sum();
        let shift = 1i128 << n_qubits;
        let g = weighted.gcd(&(shift * denom as i128));
        let (num, den) = (weighted / g, shift * denom as i128 / g);
        if num > i64::MAX as i128 || num < i64::MIN as i128 || den > i64::MAX as i128 {
            return Err(Error::invalid("mean cost overflows exact arithmetic"));
        }
        Ok(CostSpectrum {
            values,
            counts,
            c_bar: Rational64::new_raw(num as i64, den as i64),
            n_qubits,
        })
    }

    /// Number of distinct cost values, `D`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Cost] {
        &self.values
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn c_bar(&self) -> Cost {
        self.c_bar
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn total(&self) -> u64 {
        1u64 << self.n_qubits
    }

    /// Index of the class holding cost `c`, if present.
    pub fn class_index(&self, c: &Cost) -> Option<usize> {
        self.values.binary_search(c).ok()
    }

    pub fn count_of(&self, c: &Cost) -> u64 {
        self.class_index(c).map_or(0, |i| self.counts[i])
    }

    /// Cost of the bitwise-inverse class, `2·C̄ − c`.
    pub fn inverse_cost(&self, c: &Cost) -> Cost {
        self.c_bar * 2 - c
    }

    /// Standard deviation of all `2^N` solutions after scaling by `ps`:
    /// `sqrt( Σ N_j (C_j·ps − C̄·ps)² / 2^N )`.
    pub fn sigma_scaled(&self, ps: f64) -> f64 {
        let c_bar = ratio_to_f64(&self.c_bar);
        let total = self.total() as f64;
        let sum: f64 = self
            .values
            .iter()
            .zip(&self.counts)
            .map(|(v, &c)| {
                let d = (ratio_to_f64(v) - c_bar) * ps;
                c as f64 * d * d
            })
            .sum();
        (sum / total).sqrt()
    }

    /// Multiset `{(C_j − C̄, N_j)}` invariance under negating the offset.
    /// Holds exactly for spectra of linear cost functions.
    pub fn is_count_symmetric(&self) -> bool {
        let d = self.len();
        (0..d).all(|j| {
            let mirrored = self.inverse_cost(&self.values[j]);
            self.class_index(&mirrored)
                .is_some_and(|i| self.counts[i] == self.counts[j])
        })
    }

    /// CSV export: header `C,count`, one row per class in increasing C order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "C,count")?;
        for (v, c) in self.values.iter().zip(&self.counts) {
            writeln!(out, "{v},{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn ratio_to_f64(r: &Cost) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ramp_spectrum(n: u32) -> CostSpectrum {
        CostSpectrum::from_weights(&WeightSet::ramp(n)).unwrap()
    }

    #[test]
    fn evaluate_ramp_extremes() {
        let w = WeightSet::ramp(5);
        assert_eq!(w.evaluate("00000").unwrap(), Rational64::from_integer(0));
        assert_eq!(w.evaluate("11111").unwrap(), Rational64::from_integer(15));
        assert!(matches!(
            w.evaluate("0000"),
            Err(Error::BitstringLength { .. })
        ));
    }

    #[test]
    fn evaluate_signed_20_negative_block() {
        let w = presets::signed_20();
        let c = w.evaluate("11111111110000000000").unwrap();
        assert_eq!(c, Rational64::from_integer(-223));
        assert_eq!(w.w_sum(), Rational64::from_integer(-29));
    }

    #[test]
    fn inverse_pair_mean_is_half_w_sum() {
        let w = WeightSet::ramp(10);
        let expected = Rational64::new(55, 2);
        assert_eq!(w.inverse_pair_mean("0000000000").unwrap(), expected);
        assert_eq!(w.inverse_pair_mean("1010101010").unwrap(), expected);
        let w2 = presets::signed_20();
        assert_eq!(
            w2.inverse_pair_mean("01100110011001100110").unwrap(),
            Rational64::new(-29, 2)
        );
    }

    proptest! {
        #[test]
        fn inverse_pair_sums_to_w_sum(
            weights in proptest::collection::vec(-50i64..=50, 1..=12),
            index in 0u64..4096,
        ) {
            let w = WeightSet::from_integers(&weights).unwrap();
            let n = w.n_qubits();
            let index = index & ((1 << n) - 1);
            let inverse = bits::invert_index(index, n);
            prop_assert_eq!(
                w.evaluate_index(index) + w.evaluate_index(inverse),
                w.w_sum()
            );
        }

        #[test]
        fn dp_matches_brute_force(
            weights in proptest::collection::vec(-50i64..=50, 1..=10),
        ) {
            let w = WeightSet::from_integers(&weights).unwrap();
            let dp = CostSpectrum::from_weights(&w).unwrap();
            let brute = CostSpectrum::brute_force(|z| w.evaluate_index(z), w.n_qubits()).unwrap();
            prop_assert_eq!(dp, brute);
        }
    }

    #[test]
    fn ramp5_table() {
        let s = ramp_spectrum(5);
        assert_eq!(s.len(), 16);
        let values: Vec<i64> = s.values().iter().map(|v| *v.numer()).collect();
        assert_eq!(values, (0..=15).collect::<Vec<_>>());
        assert_eq!(
            s.counts(),
            &[1, 1, 1, 2, 2, 3, 3, 3, 3, 3, 3, 2, 2, 1, 1, 1]
        );
        let brute = CostSpectrum::brute_force(|z| WeightSet::ramp(5).evaluate_index(z), 5).unwrap();
        assert_eq!(s, brute);
    }

    #[test]
    fn ramp2_classes() {
        let s = ramp_spectrum(2);
        assert_eq!(s.values(), &[0, 1, 2, 3].map(Rational64::from_integer));
        assert_eq!(s.counts(), &[1, 1, 1, 1]);
        assert_eq!(s.c_bar(), Rational64::new(3, 2));
    }

    #[test]
    fn constant_cost_single_class() {
        let s = CostSpectrum::brute_force(|_| Rational64::from_integer(7), 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.values()[0], Rational64::from_integer(7));
        assert_eq!(s.counts()[0], 8);
        assert_eq!(s.c_bar(), Rational64::from_integer(7));
    }

    #[test]
    fn ramp40_spectrum() {
        let s = ramp_spectrum(40);
        assert_eq!(s.len(), 821);
        assert_eq!(s.values()[0], Rational64::zero());
        assert_eq!(*s.values().last().unwrap(), Rational64::from_integer(820));
        assert_eq!(s.counts().iter().sum::<u64>(), 1u64 << 40);
        assert_eq!(s.c_bar(), Rational64::from_integer(410));
        assert!(s.is_count_symmetric());
    }

    #[test]
    fn signed_20_spectrum() {
        let s = CostSpectrum::from_weights(&presets::signed_20()).unwrap();
        assert_eq!(s.c_bar(), Rational64::new(-29, 2));
        assert_eq!(s.values()[0], Rational64::from_integer(-223));
        assert_eq!(*s.values().last().unwrap(), Rational64::from_integer(194));
        assert_eq!(s.counts().iter().sum::<u64>(), 1u64 << 20);
        assert!(s.is_count_symmetric());
        // Caption-level inconsistency upstream: the inverse of -222 is 193,
        // not 194, and neither -222 nor 193 is attainable for these weights.
        assert_eq!(
            s.inverse_cost(&Rational64::from_integer(-222)),
            Rational64::from_integer(193)
        );
        assert_eq!(s.count_of(&Rational64::from_integer(-222)), 0);
        assert_eq!(
            s.inverse_cost(&Rational64::from_integer(-223)),
            Rational64::from_integer(194)
        );
    }

    #[test]
    fn dp_equals_brute_force_ramp10() {
        let w = WeightSet::ramp(10);
        let dp = CostSpectrum::from_weights(&w).unwrap();
        let brute = CostSpectrum::brute_force(|z| w.evaluate_index(z), 10).unwrap();
        assert_eq!(dp, brute);
    }

    #[test]
    fn inverse_cost_values() {
        let s = ramp_spectrum(10);
        assert_eq!(
            s.inverse_cost(&Rational64::from_integer(2)),
            Rational64::from_integer(53)
        );
        let fixed = s.c_bar();
        assert_eq!(s.inverse_cost(&fixed), fixed);
    }

    #[test]
    fn sigma_scaled_values() {
        let s = ramp_spectrum(2);
        assert_eq!(s.sigma_scaled(0.0), 0.0);
        let expected = (1.25f64).sqrt();
        assert!((s.sigma_scaled(1.0) - expected).abs() < 1e-15);
        assert!((s.sigma_scaled(2.0) - 2.0 * expected).abs() < 1e-15);
    }

    #[test]
    fn brute_force_guard() {
        let err = CostSpectrum::brute_force(|_| Rational64::zero(), 25).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn rational_weights_are_exact() {
        let w = WeightSet::new(vec![
            Rational64::new(1, 2),
            Rational64::new(1, 3),
            Rational64::from_integer(2),
        ])
        .unwrap();
        let dp = CostSpectrum::from_weights(&w).unwrap();
        let brute = CostSpectrum::brute_force(|z| w.evaluate_index(z), 3).unwrap();
        assert_eq!(dp, brute);
        assert_eq!(dp.c_bar(), w.w_sum() / 2);
    }

    #[test]
    fn real_valued_brute_force_merges_classes() {
        // Two evaluations 1e-12 apart collapse into one class.
        let s =
            CostSpectrum::brute_force_real(|z| if z == 0 { 1.0 } else { 1.0 + 1e-12 }, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.counts()[0], 4);
    }

    #[test]
    fn parse_exact_literals() {
        assert_eq!(parse_exact("-44").unwrap(), Rational64::from_integer(-44));
        assert_eq!(parse_exact("0.5").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_exact("-0.125").unwrap(), Rational64::new(-1, 8));
        assert_eq!(parse_exact("3/2").unwrap(), Rational64::new(3, 2));
        assert_eq!(parse_exact("2e3").unwrap(), Rational64::from_integer(2000));
        assert_eq!(parse_exact("1.5e-2").unwrap(), Rational64::new(3, 200));
        assert!(parse_exact("abc").is_err());
    }

    #[test]
    fn weight_file_round_trip() {
        let w = WeightSet::from_json(r#"{"weights": [1, -44, "0.5", "3/2"]}"#).unwrap();
        assert_eq!(
            w.weights(),
            &[
                Rational64::from_integer(1),
                Rational64::from_integer(-44),
                Rational64::new(1, 2),
                Rational64::new(3, 2)
            ]
        );
        assert!(WeightSet::from_json(r#"{"weights": []}"#).is_err());
        assert!(WeightSet::from_json(r#"{"w": [1]}"#).is_err());
    }

    #[test]
    fn csv_export_format() {
        let mut buf = Vec::new();
        ramp_spectrum(2).write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "C,count\n0,1\n1,1\n2,1\n3,1\n"
        );
    }

    #[test]
    fn signed_41_spectrum() {
        let w = presets::signed_41();
        assert_eq!(w.n_qubits(), 41);
        assert_eq!(w.w_sum(), Rational64::from_integer(4737));
        let s = CostSpectrum::from_weights(&w).unwrap();
        assert_eq!(s.len(), 18104);
        assert_eq!(s.values()[0], Rational64::from_integer(-6789));
        assert_eq!(*s.values().last().unwrap(), Rational64::from_integer(11526));
        assert_eq!(s.counts().iter().sum::<u64>(), 1u64 << 41);
        assert_eq!(s.c_bar(), Rational64::new(4737, 2));
        assert!(s.is_count_symmetric());
    }

    #[test]
    fn grover_spectrum_shape() {
        let s = CostSpectrum::grover(3, 1).unwrap();
        assert_eq!(s.counts(), &[7, 1]);
        assert!(CostSpectrum::grover(3, 8).is_err());
        assert!(CostSpectrum::grover(3, 0).is_err());
    }
}
