//! Root-system combinatorics for the affine superalgebra family
//! `osp(2m+1|2n)^(1)` in the standard parity sequence.
//!
//! For ranks `(m, n)` with `m >= 1` set `N = m + n`.  The weight space is
//! spanned by `ε_1, …, ε_N` and the null root `δ`, with the supersymmetric
//! bilinear form `(ε_i, ε_j) = (−1)^[i] δ_ij` where the parity `[i]` is 1
//! for `1 ≤ i ≤ n` and 0 otherwise; `δ` pairs to zero with everything.
//! Simple roots are `α_i = ε_i − ε_{i+1}` for `i < N`, `α_N = ε_N`, and
//! the affine node `α_0 = δ − θ` with highest root `θ = 2ε_1`.
//!
//! The affine Cartan matrix keeps the classical rows `A_ij = (α_i, α_j)`
//! for `1 ≤ i < N`, doubles row `N`, and carries the conventional affine
//! extension `A_00 = −2`, `A_10 = 2 A_01 = −2`, `A_j0 = A_0j = 0` for
//! `j > 1`.  Note that the mixed entries `A_01`, `A_10` do *not* agree in
//! sign with the bilinear form (`(α_0, α_1) = +2` because `θ` has negative
//! length); all weight/K-commutation scalars elsewhere in this crate are
//! therefore derived from the bilinear form, which is the convention
//! forced by centrality of `K_δ`.

use crate::scalar::Scalar;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootSysError {
    #[error("rank m = 0 is not supported")]
    RankZero,
}

/// An element of the affine root lattice, stored as integer coordinates
/// over the affine simple roots `α_0, …, α_N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![0; rank + 1],
        }
    }

    /// The simple root `α_i` as a lattice element.
    pub fn simple(i: usize, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.coords[i] = 1;
        w
    }

    /// The null root `δ = α_0 + 2(α_1 + … + α_N)`.
    pub fn delta(rank: usize) -> Weight {
        let mut w = Weight {
            coords: vec![2; rank + 1],
        };
        w.coords[0] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Sum of simple-root coordinates.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Membership in the positive cone `Q_+` (nonzero, all coordinates
    /// nonnegative).
    pub fn in_positive_cone(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|&c| c >= 0)
    }

    /// Support: indices in `{1, …, N}` with nonzero coordinate.  The
    /// `α_0`-coordinate is ignored by convention.
    pub fn supp(&self) -> BTreeSet<usize> {
        (1..self.coords.len())
            .filter(|&i| self.coords[i] != 0)
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "a{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A reduced positive affine root: either real (stored as a lattice
/// element) or imaginary `rδ^(i)` with multiplicity color `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum AffineRoot {
    Real(Weight),
    Imaginary { r: i64, color: usize },
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineRoot::Real(w) => write!(f, "{w}"),
            AffineRoot::Imaginary { r, color } => write!(f, "{r}d({color})"),
        }
    }
}

/// All combinatorial data of `osp(2m+1|2n)^(1)` for fixed ranks.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub m: usize,
    pub n: usize,
    /// `N = m + n`: number of classical nodes; affine nodes are `0..=N`.
    pub rank: usize,
    /// `parity_eps[i] = [i]` for `1 ≤ i ≤ N` (index 0 unused).
    pub parity_eps: Vec<u8>,
    /// `d[i] = (ε_i, ε_i)` for `1 ≤ i ≤ N`, plus the convention
    /// `d[N+1] = 1` (index 0 unused).
    pub d: Vec<i64>,
    /// `simple_eps[i]`: `α_i` in `(ε_1..ε_N, δ)`-coordinates (length N+1,
    /// last entry the δ-coefficient).
    pub simple_eps: Vec<Vec<i64>>,
    /// Parity of each simple root `[α_i]`, indices `0..=N`.
    pub simple_parity: Vec<u8>,
    /// The affine Cartan matrix, `(N+1) × (N+1)`.
    pub cartan: Vec<Vec<i64>>,
    /// `t[i]`: the exponent with `q_i = v^{t[i]}` (recall `q = v²`).
    pub qi_vexp: Vec<i64>,
}

impl RootDatum {
    pub fn build(m: usize, n: usize) -> Result<RootDatum, RootSysError> {
        if m == 0 {
            return Err(RootSysError::RankZero);
        }
        let rank = m + n;
        let mut parity_eps = vec![0u8; rank + 1];
        for i in 1..=rank {
            parity_eps[i] = if i <= n { 1 } else { 0 };
        }
        let mut d = vec![0i64; rank + 2];
        for i in 1..=rank {
            d[i] = if parity_eps[i] == 1 { -1 } else { 1 };
        }
        d[rank + 1] = 1;

        // ε-coordinates: index 0..rank-1 hold ε_1..ε_N, index rank holds δ.
        let mut simple_eps = vec![vec![0i64; rank + 1]; rank + 1];
        for i in 1..rank {
            simple_eps[i][i - 1] = 1;
            simple_eps[i][i] = -1;
        }
        simple_eps[rank][rank - 1] = 1;
        // α_0 = δ − θ = δ − 2ε_1.
        simple_eps[0][rank] = 1;
        simple_eps[0][0] = -2;

        let mut datum = RootDatum {
            m,
            n,
            rank,
            parity_eps,
            d,
            simple_eps,
            simple_parity: Vec::new(),
            cartan: Vec::new(),
            qi_vexp: Vec::new(),
        };

        datum.simple_parity = (0..=rank)
            .map(|i| datum.parity_of_eps(&datum.simple_eps[i]))
            .collect();

        let mut cartan = vec![vec![0i64; rank + 1]; rank + 1];
        for i in 1..=rank {
            for j in 1..=rank {
                let b = datum.bilinear_eps(&datum.simple_eps[i], &datum.simple_eps[j]);
                cartan[i][j] = if i == rank { 2 * b } else { b };
            }
        }
        cartan[0][0] = -2;
        cartan[0][1] = -1;
        cartan[1][0] = -2;
        datum.cartan = cartan;

        datum.qi_vexp = (0..=rank)
            .map(|i| {
                let a = datum.bilinear_eps(&datum.simple_eps[i], &datum.simple_eps[i]);
                if a == 0 {
                    2
                } else {
                    a.abs()
                }
            })
            .collect();
        Ok(datum)
    }

    /// A datum over the same ambient `(ε, δ)` space and ranks but presented
    /// by a different simple system, given in ε-coordinates.  Node parities,
    /// the pairing matrix (taken verbatim from the bilinear form), and the
    /// `q_i` exponents are recomputed from the new roots; the ambient data
    /// (`parity_eps`, `d`) is shared.  The standard-basis conversions
    /// (`from_eps`, `positive_roots`, `cmp_prec`) remain tied to the
    /// standard simple system and must not be used on such a datum.
    pub fn with_simple_roots(&self, simple_eps: Vec<Vec<i64>>) -> RootDatum {
        let rank = self.rank;
        let mut datum = RootDatum {
            m: self.m,
            n: self.n,
            rank,
            parity_eps: self.parity_eps.clone(),
            d: self.d.clone(),
            simple_eps,
            simple_parity: Vec::new(),
            cartan: Vec::new(),
            qi_vexp: Vec::new(),
        };
        datum.simple_parity = (0..=rank)
            .map(|i| datum.parity_of_eps(&datum.simple_eps[i]))
            .collect();
        let mut cartan = vec![vec![0i64; rank + 1]; rank + 1];
        for i in 0..=rank {
            for j in 0..=rank {
                cartan[i][j] = datum.bilinear_eps(&datum.simple_eps[i], &datum.simple_eps[j]);
            }
        }
        datum.cartan = cartan;
        datum.qi_vexp = (0..=rank)
            .map(|i| {
                let a = datum.bilinear_eps(&datum.simple_eps[i], &datum.simple_eps[i]);
                if a == 0 {
                    2
                } else {
                    a.abs()
                }
            })
            .collect();
        datum
    }

    /// The bilinear form on ε-coordinate vectors.
    pub fn bilinear_eps(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.rank)
            .map(|i| {
                let sign = if self.parity_eps[i + 1] == 1 { -1 } else { 1 };
                sign * a[i] * b[i]
            })
            .sum()
    }

    /// Convert a lattice element from simple-root to ε-coordinates.
    pub fn to_eps(&self, w: &Weight) -> Vec<i64> {
        let mut out = vec![0i64; self.rank + 1];
        for (i, &c) in w.coords.iter().enumerate() {
            for (k, &e) in self.simple_eps[i].iter().enumerate() {
                out[k] += c * e;
            }
        }
        out
    }

    /// Convert from ε-coordinates back to simple-root coordinates; the
    /// input must lie in the root lattice.
    pub fn from_eps(&self, eps: &[i64]) -> Weight {
        // c_0 is the δ-coefficient; subtract c_0·(−2ε_1) and solve the
        // triangular chain ε_j-coefficient = c_j − c_{j−1}.
        let c0 = eps[self.rank];
        let mut e = eps[..self.rank].to_vec();
        e[0] += 2 * c0;
        let mut coords = vec![0i64; self.rank + 1];
        coords[0] = c0;
        let mut run = 0i64;
        for j in 0..self.rank {
            run += e[j];
            coords[j + 1] = run;
        }
        let w = Weight { coords };
        debug_assert_eq!(self.to_eps(&w), eps);
        w
    }

    /// Bilinear form on lattice elements.
    pub fn bilinear(&self, a: &Weight, b: &Weight) -> i64 {
        self.bilinear_eps(&self.to_eps(a), &self.to_eps(b))
    }

    /// Parity of an ε-coordinate vector: sum of `|c_i|·[i]` mod 2.
    fn parity_of_eps(&self, eps: &[i64]) -> u8 {
        let s: i64 = (0..self.rank)
            .map(|i| eps[i].abs() * self.parity_eps[i + 1] as i64)
            .sum();
        (s % 2) as u8
    }

    /// Parity of a lattice element.
    pub fn parity(&self, w: &Weight) -> u8 {
        let s: i64 = w
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| c.abs() * self.simple_parity[i] as i64)
            .sum();
        (s % 2) as u8
    }

    /// `q_i` as a [`Scalar`].
    pub fn q_i(&self, i: usize) -> Scalar {
        Scalar::v_pow(self.qi_vexp[i])
    }

    /// The symmetric q-integer `[a]_i`.
    pub fn q_int(&self, a: i64, i: usize) -> Scalar {
        Scalar::q_integer(a, self.qi_vexp[i])
    }

    /// `q^(e)` for an integer exponent `e` of `q` (not of `v`).
    pub fn q_pow(&self, e: i64) -> Scalar {
        Scalar::q_pow(e)
    }

    /// Positive roots of the finite part, split by parity, in
    /// simple-root coordinates.
    pub fn positive_roots(&self) -> (Vec<Weight>, Vec<Weight>) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        let rank = self.rank;
        let mut push = |eps: Vec<i64>, this: &RootDatum| {
            let w = this.from_eps(&eps);
            if this.parity_of_eps(&eps) == 0 {
                even.push(w);
            } else {
                odd.push(w);
            }
        };
        // ε_i ± ε_j for i < j.
        for i in 0..rank {
            for j in (i + 1)..rank {
                for sign in [1i64, -1] {
                    let mut eps = vec![0i64; rank + 1];
                    eps[i] = 1;
                    eps[j] = sign;
                    push(eps, self);
                }
            }
        }
        // 2ε_k for odd k; ε_l for all l (even if [l]=0, odd if [l]=1).
        for k in 0..rank {
            if self.parity_eps[k + 1] == 1 {
                let mut eps = vec![0i64; rank + 1];
                eps[k] = 2;
                push(eps, self);
            }
            let mut eps = vec![0i64; rank + 1];
            eps[k] = 1;
            push(eps, self);
        }
        even.sort();
        odd.sort();
        (even, odd)
    }

    /// Reduced positive roots: all positive roots except those `α` with
    /// `α/2` odd (i.e. the doubled odd roots `2ε_k`).
    pub fn reduced_positive_roots(&self) -> Vec<Weight> {
        let (even, odd) = self.positive_roots();
        let mut out: Vec<Weight> = even
            .into_iter()
            .filter(|w| {
                let eps = self.to_eps(w);
                // exclude 2ε_k with [k] = 1
                !(eps[..self.rank].iter().filter(|&&c| c != 0).count() == 1
                    && eps[..self.rank].iter().any(|&c| c == 2))
            })
            .chain(odd)
            .collect();
        out.sort();
        out
    }

    /// Membership test against the full finite positive root list.
    pub fn is_positive_root(&self, w: &Weight) -> bool {
        let (even, odd) = self.positive_roots();
        even.contains(w) || odd.contains(w)
    }

    /// Membership in the reduced finite positive root list.
    pub fn is_reduced_positive_root(&self, w: &Weight) -> bool {
        self.reduced_positive_roots().contains(w)
    }

    /// The order `≺` on reduced positive affine roots.
    ///
    /// Real roots are compared by decreasing lexicographic order of their
    /// height-normalized simple-root coordinate vectors `(c_0, …, c_N)/h`;
    /// this is a convex order (sums land between their summands), places
    /// `α_0 ≺ α_1 ≺ … ≺ α_N`, and reproduces the low-rank reduced-root
    /// chain `α_1 ≺ α_1+α_2 ≺ α_1+2α_2 ≺ α_2`.  Imaginary roots all share
    /// the normalized vector of `δ` and sit between the `kδ−β` and `kδ+β`
    /// families; among themselves they are ordered by `(k, i)`.  Distinct
    /// proportional reals fall back to (height, coordinates).
    pub fn cmp_prec(&self, a: &AffineRoot, b: &AffineRoot) -> Ordering {
        let coords = |r: &AffineRoot| -> Vec<i64> {
            match r {
                AffineRoot::Real(w) => w.coords.clone(),
                AffineRoot::Imaginary { r, .. } => Weight::delta(self.rank).scale(*r).coords,
            }
        };
        let ca = coords(a);
        let cb = coords(b);
        let ha: i64 = ca.iter().sum();
        let hb: i64 = cb.iter().sum();
        assert!(ha > 0 && hb > 0, "order defined on positive affine roots");
        for k in 0..ca.len() {
            let lhs = ca[k] as i128 * hb as i128;
            let rhs = cb[k] as i128 * ha as i128;
            match lhs.cmp(&rhs) {
                // larger normalized coordinate comes earlier
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => {}
            }
        }
        // Proportional coordinate vectors.
        match (a, b) {
            (
                AffineRoot::Imaginary { r: r1, color: c1 },
                AffineRoot::Imaginary { r: r2, color: c2 },
            ) => (r1, c1).cmp(&(r2, c2)),
            (AffineRoot::Imaginary { .. }, AffineRoot::Real(_)) => Ordering::Less,
            (AffineRoot::Real(_), AffineRoot::Imaginary { .. }) => Ordering::Greater,
            (AffineRoot::Real(wa), AffineRoot::Real(wb)) => {
                (ha, &wa.coords).cmp(&(hb, &wb.coords))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum11() -> RootDatum {
        RootDatum::build(1, 1).unwrap()
    }

    #[test]
    fn rejects_m_zero() {
        assert!(RootDatum::build(0, 2).is_err());
    }

    #[test]
    fn cartan_matrix_1_1() {
        let d = datum11();
        assert_eq!(d.cartan[0], vec![-2, -1, 0]);
        assert_eq!(d.cartan[1], vec![-2, 0, -1]);
        assert_eq!(d.cartan[2], vec![0, -2, 2]);
    }

    #[test]
    fn parity_and_lengths_1_1() {
        let d = datum11();
        assert_eq!(d.d[1], -1);
        assert_eq!(d.d[2], 1);
        assert_eq!(d.d[3], 1);
        // q_0 = q², q_1 = q, q_2 = q^(1/2)
        assert_eq!(d.qi_vexp, vec![4, 2, 1]);
        let a0 = Weight::simple(0, 2);
        let a1 = Weight::simple(1, 2);
        assert_eq!(d.bilinear(&a0, &a0), -4);
        assert_eq!(d.bilinear(&a1, &a1), 0);
        assert_eq!(d.bilinear(&a0, &a1), 2);
        assert_eq!(d.simple_parity, vec![0, 1, 0]);
    }

    #[test]
    fn delta_is_isotropic_and_central_weightwise() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let d = RootDatum::build(m, n).unwrap();
            let delta = Weight::delta(d.rank);
            for j in 0..=d.rank {
                assert_eq!(d.bilinear(&delta, &Weight::simple(j, d.rank)), 0);
            }
            assert_eq!(d.bilinear(&delta, &delta), 0);
        }
    }

    #[test]
    fn positive_roots_1_1() {
        let d = datum11();
        let (even, odd) = d.positive_roots();
        assert_eq!(even.len(), 2);
        assert_eq!(odd.len(), 3);
        let reduced = d.reduced_positive_roots();
        assert_eq!(reduced.len(), 4);
        // {α₁, α₂, α₁+α₂, α₁+2α₂}
        let mk = |c: [i64; 3]| Weight { coords: c.to_vec() };
        for w in [mk([0, 1, 0]), mk([0, 0, 1]), mk([0, 1, 1]), mk([0, 1, 2])] {
            assert!(reduced.contains(&w), "missing {w}");
        }
    }

    #[test]
    fn reduced_equals_full_for_n_zero() {
        let d = RootDatum::build(2, 0).unwrap();
        let (even, odd) = d.positive_roots();
        assert_eq!(
            d.reduced_positive_roots().len(),
            even.len() + odd.len()
        );
    }

    #[test]
    fn eps_round_trip() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let d = RootDatum::build(m, n).unwrap();
            for w in d.reduced_positive_roots() {
                assert_eq!(d.from_eps(&d.to_eps(&w)), w);
            }
            let delta = Weight::delta(d.rank);
            assert_eq!(d.from_eps(&d.to_eps(&delta)), delta);
        }
    }

    #[test]
    fn order_chain_low_rank() {
        let d = datum11();
        let mk = |c: [i64; 3]| AffineRoot::Real(Weight { coords: c.to_vec() });
        let chain = [mk([0, 1, 0]), mk([0, 1, 1]), mk([0, 1, 2]), mk([0, 0, 1])];
        for pair in chain.windows(2) {
            assert_eq!(d.cmp_prec(&pair[0], &pair[1]), Ordering::Less);
        }
    }

    #[test]
    fn order_simple_roots_and_imaginary() {
        let d = RootDatum::build(2, 1).unwrap();
        // α₀ ≺ α₁ ≺ α₂ ≺ α₃
        for i in 0..d.rank {
            let a = AffineRoot::Real(Weight::simple(i, d.rank));
            let b = AffineRoot::Real(Weight::simple(i + 1, d.rank));
            assert_eq!(d.cmp_prec(&a, &b), Ordering::Less);
        }
        // kδ^(1) ≺ kδ^(2) ≺ kδ^(3); δ^(3) ≺ 2δ^(1)
        for k in 1..=2 {
            for i in 1..d.rank {
                let a = AffineRoot::Imaginary { r: k, color: i };
                let b = AffineRoot::Imaginary { r: k, color: i + 1 };
                assert_eq!(d.cmp_prec(&a, &b), Ordering::Less);
            }
        }
        let a = AffineRoot::Imaginary { r: 1, color: d.rank };
        let b = AffineRoot::Imaginary { r: 2, color: 1 };
        assert_eq!(d.cmp_prec(&a, &b), Ordering::Less);
    }

    /// Collect the reduced positive affine roots with δ-multiplicity ≤ 2
    /// plus the affine seed `δ − θ`.
    fn affine_sample(d: &RootDatum) -> Vec<AffineRoot> {
        let delta = Weight::delta(d.rank);
        let mut out = Vec::new();
        for beta in d.reduced_positive_roots() {
            for k in 0..=2i64 {
                out.push(AffineRoot::Real(delta.scale(k).add(&beta)));
                if k >= 1 {
                    out.push(AffineRoot::Real(delta.scale(k).sub(&beta)));
                }
            }
        }
        out.push(AffineRoot::Real(Weight::simple(0, d.rank)));
        for r in 1..=2 {
            for i in 1..=d.rank {
                out.push(AffineRoot::Imaginary { r, color: i });
            }
        }
        out
    }

    #[test]
    fn order_is_strict_total_order() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let d = RootDatum::build(m, n).unwrap();
            let sample = affine_sample(&d);
            for a in &sample {
                assert_eq!(d.cmp_prec(a, a), Ordering::Equal);
                for b in &sample {
                    let ab = d.cmp_prec(a, b);
                    assert_eq!(ab, d.cmp_prec(b, a).reverse());
                    if a != b {
                        assert_ne!(ab, Ordering::Equal, "{a} vs {b}");
                    }
                    for c in &sample {
                        if ab == Ordering::Less && d.cmp_prec(b, c) == Ordering::Less {
                            assert_eq!(d.cmp_prec(a, c), Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_convexity_constraint() {
        // Whenever γ = α + β with all three in the sample and α ≠ β, γ
        // must lie strictly between α and β.
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let d = RootDatum::build(m, n).unwrap();
            let sample = affine_sample(&d);
            let reals: Vec<&Weight> = sample
                .iter()
                .filter_map(|r| match r {
                    AffineRoot::Real(w) => Some(w),
                    _ => None,
                })
                .collect();
            for a in &reals {
                for b in &reals {
                    if a == b {
                        continue;
                    }
                    let g = a.add(b);
                    if !reals.contains(&&g) {
                        continue;
                    }
                    let (ra, rb, rg) = (
                        AffineRoot::Real((*a).clone()),
                        AffineRoot::Real((*b).clone()),
                        AffineRoot::Real(g.clone()),
                    );
                    let ag = d.cmp_prec(&ra, &rg);
                    let gb = d.cmp_prec(&rg, &rb);
                    assert_eq!(ag, gb, "{a} + {b} = {g} not between its summands");
                }
            }
        }
    }

    #[test]
    fn order_difference_constraint_low_rank() {
        // On the finite positive roots at (1,1) the difference
        // constraint (β before α whenever α − β lies in the positive
        // cone without being a root) is consistent with convexity and
        // the simple-root chain, and the chosen order satisfies it.
        // Across δ-levels (and at higher rank even at level zero, see
        // the next test) the constraint contradicts convexity, so it is
        // enforced only on this consistent subset.
        let d = datum11();
        let reals: Vec<Weight> = d.reduced_positive_roots();
        let reals: Vec<&Weight> = reals.iter().collect();
        let is_sample_root = |w: &Weight| {
            // finite sample roots, plus the imaginary multiples of δ
            reals.contains(&w)
                || (1..=4i64).any(|k| *w == Weight::delta(d.rank).scale(k))
        };
        for a in &reals {
            for b in &reals {
                if a == b {
                    continue;
                }
                let diff = a.sub(b);
                if diff.in_positive_cone() && !is_sample_root(&diff) {
                    assert_eq!(
                        d.cmp_prec(
                            &AffineRoot::Real((*b).clone()),
                            &AffineRoot::Real((*a).clone())
                        ),
                        Ordering::Less,
                        "{b} should precede {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_difference_constraint_unsatisfiable_at_2_1() {
        // At (2,1) the difference constraint contradicts convexity and
        // the simple-root chain: convexity forces
        // ε₂ ∈ (α₂, α₃), ε₁ ∈ (α₁, ε₂), ε₁+ε₂ ∈ (ε₁, ε₂), which pins
        // ε₁+ε₂ before α₃; the difference constraint demands the
        // opposite because (ε₁+ε₂) − ε₃ is a non-root in the positive
        // cone.  This test documents that no total order satisfies both,
        // so the difference constraint is enforced only where consistent.
        let d = RootDatum::build(2, 1).unwrap();
        let eps = |v: [i64; 4]| d.from_eps(&v);
        let e1 = eps([1, 0, 0, 0]);
        let e2 = eps([0, 1, 0, 0]);
        let e3 = eps([0, 0, 1, 0]);
        let e12 = eps([1, 1, 0, 0]);
        let a1 = Weight::simple(1, 3);
        let a2 = Weight::simple(2, 3);
        let a3 = Weight::simple(3, 3);
        // The offending difference is in the positive cone and non-root:
        let diff = e12.sub(&e3);
        assert!(diff.in_positive_cone());
        assert!(!d.is_positive_root(&diff));
        // Chain of forced betweenness facts (α₂ ≺ α₃ by the simple-root
        // chain): ε₂ = α₂ + α₃, ε₁ = α₁ + ε₂, ε₁+ε₂ = ε₁ + ε₂.
        assert_eq!(e2, a2.add(&a3));
        assert_eq!(e1, a1.add(&e2));
        assert_eq!(e12, e1.add(&e2));
        // Under the implemented order the betweenness facts all hold and
        // ε₁+ε₂ precedes α₃, so the difference constraint instance fails
        // — as it must in every convex order.
        let r = |w: &Weight| AffineRoot::Real(w.clone());
        assert_eq!(d.cmp_prec(&r(&e12), &r(&a3)), Ordering::Less);
    }

    #[test]
    fn supp_examples() {
        let d = datum11();
        let w = Weight {
            coords: vec![0, 1, 2],
        };
        assert_eq!(w.supp(), [1, 2].into_iter().collect());
        assert_eq!(Weight::simple(2, 2).supp(), [2].into_iter().collect());
        // α₀-coordinate ignored
        assert!(Weight::simple(0, 2).supp().is_empty());
        let _ = d;
    }

    #[test]
    fn cartan_row_zero_all_ranks() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
            let d = RootDatum::build(m, n).unwrap();
            assert_eq!(d.cartan[0][0], -2);
            assert_eq!(d.cartan[0][1], -1);
            assert_eq!(d.cartan[1][0], -2);
            for j in 2..=d.rank {
                assert_eq!(d.cartan[0][j], 0);
                assert_eq!(d.cartan[j][0], 0);
            }
        }
    }
}
