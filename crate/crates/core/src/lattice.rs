//! Integer lattices in ℚⁿ kept in row Hermite normal form, plus a small
//! ℚ-span type used when the base domain is itself a field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-style HNF: the nonzero rows are in echelon form with positive pivots and
/// the entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    hnf_with_kernel(rows).0
}

/// Returns the HNF of `rows` and a basis of the integer left kernel
/// `{x : xᵀ·rows = 0}`, both obtained from unimodular row operations.
pub fn hnf_with_kernel(rows: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = rows.len();
    if m == 0 {
        return (Vec::new(), Vec::new());
    }
    let n = rows[0].len();
    let mut a = rows;
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // move the smallest nonzero entry of column c (rows r..) to row r
            let best = (r..m).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a[r]);
            negate_row(&mut u[r]);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    let kernel = u[r..].to_vec();
    a.truncate(r);
    (a, kernel)
}

fn sub_row(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

fn negate_row(r: &mut [BigInt]) {
    for x in r.iter_mut() {
        *x = -x.clone();
    }
}

fn lcm_of_denoms<'a>(vals: impl Iterator<Item = &'a BigRational>) -> BigInt {
    vals.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// A nonzero lattice `(1/den)·span_ℤ(rows)` in ℚⁿ, canonical per lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl ZLattice {
    /// Lattice spanned by the given rational vectors; `None` if they are all zero.
    pub fn from_rows(dim: usize, vectors: &[Vec<BigRational>]) -> Option<Self> {
        let den = lcm_of_denoms(vectors.iter().flatten());
        let ints: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                debug_assert_eq!(v.len(), dim);
                v.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        Self::from_integer_rows(dim, ints, den)
    }

    fn from_integer_rows(dim: usize, ints: Vec<Vec<BigInt>>, den: BigInt) -> Option<Self> {
        let rows = hnf(ints);
        if rows.is_empty() {
            return None;
        }
        let g = rows.iter().flatten().fold(den.clone(), |g, x| g.gcd(x));
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
        Some(ZLattice { dim, rows, den: den / g })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn integer_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect())
            .collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Self::from_rows(self.dim, &vs).expect("sum of nonzero lattices")
    }

    pub fn scale(&self, q: &BigRational) -> Option<Self> {
        let vs: Vec<Vec<BigRational>> = self.basis().into_iter().map(|r| r.into_iter().map(|x| x * q).collect()).collect();
        Self::from_rows(self.dim, &vs)
    }

    /// Intersection via the integer left kernel of `[B₁; −B₂]`; `None` when trivial.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let den = self.den.lcm(&other.den);
        let s1 = &den / &self.den;
        let s2 = &den / &other.den;
        let mut stacked: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.iter().map(|x| x * &s1).collect()).collect();
        stacked.extend(other.rows.iter().map(|r| r.iter().map(|x| -(x * &s2)).collect::<Vec<_>>()));
        let (_, kernel) = hnf_with_kernel(stacked);
        let k1 = self.rows.len();
        let vecs: Vec<Vec<BigInt>> = kernel
            .iter()
            .map(|x| {
                (0..self.dim)
                    .map(|c| (0..k1).fold(BigInt::zero(), |acc, i| acc + &x[i] * &self.rows[i][c] * &s1))
                    .collect()
            })
            .collect();
        Self::from_integer_rows(self.dim, vecs, den)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let den = BigRational::from_integer(self.den.clone());
        let mut w = Vec::with_capacity(v.len());
        for q in v {
            let s = q * &den;
            if !s.is_integer() {
                return false;
            }
            w.push(s.to_integer());
        }
        for row in &self.rows {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero HNF row");
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (wc, rc) in w.iter_mut().zip(row.iter()) {
                *wc -= &q * rc;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }
}

/// A nonzero ℚ-subspace of ℚⁿ in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSpan {
    dim: usize,
    rows: Vec<Vec<BigRational>>,
}

impl QSpan {
    pub fn from_rows(dim: usize, vectors: &[Vec<BigRational>]) -> Option<Self> {
        let mut a: Vec<Vec<BigRational>> = vectors.to_vec();
        let mut r = 0;
        for c in 0..dim {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &f * y;
                    }
                }
            }
            r += 1;
        }
        a.truncate(r);
        if a.is_empty() {
            None
        } else {
            Some(QSpan { dim, rows: a })
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut all = self.rows.clone();
        all.push(v.to_vec());
        QSpan::from_rows(self.dim, &all).map(|s| s.rank()) == Some(self.rank())
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        QSpan::from_rows(self.dim, &all).expect("nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn lat(rows: &[&[i64]]) -> ZLattice {
        let vs: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        ZLattice::from_rows(rows[0].len(), &vs).unwrap()
    }

    /// Brute-force membership over a coefficient box; independent of the HNF path.
    fn brute_contains(gens: &[&[i64]], v: &[i64], bound: i64) -> bool {
        fn rec(gens: &[&[i64]], acc: Vec<i64>, v: &[i64], bound: i64) -> bool {
            match gens.split_first() {
                None => acc == v,
                Some((g, rest)) => (-bound..=bound).any(|c| {
                    let next: Vec<i64> = acc.iter().zip(g.iter()).map(|(a, b)| a + c * b).collect();
                    rec(rest, next, v, bound)
                }),
            }
        }
        rec(gens, vec![0; v.len()], v, bound)
    }

    #[test]
    fn hnf_is_canonical() {
        let a = lat(&[&[2, 0], &[1, 1]]);
        let b = lat(&[&[1, 1], &[3, 1], &[0, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.integer_rows(), &[vec![1.into(), 1.into()], vec![0.into(), 2.into()]]);
    }

    #[test]
    fn intersection_of_coprime_scalings() {
        let a = lat(&[&[2]]);
        let b = lat(&[&[3]]);
        assert_eq!(a.intersect(&b).unwrap(), lat(&[&[6]]));
        let x = lat(&[&[1, 0]]);
        let y = lat(&[&[0, 1]]);
        assert!(x.intersect(&y).is_none());
    }

    #[test]
    fn kernel_is_exact() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(3), BigInt::from(6)], vec![BigInt::from(1), BigInt::from(1)]];
        let (h, k) = hnf_with_kernel(rows.clone());
        assert_eq!(h.len(), 2);
        assert_eq!(k.len(), 1);
        for c in 0..2 {
            let s: BigInt = (0..3).map(|i| &k[0][i] * &rows[i][c]).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn qspan_rref() {
        let s = QSpan::from_rows(2, &[vec![q(2), q(4)], vec![q(1), q(2)]]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.contains(&[q(-3), q(-6)]));
        assert!(!s.contains(&[q(1), q(0)]));
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force(
            g in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 1..3),
            v in prop::collection::vec(-6i64..=6, 2),
        ) {
            let gens: Vec<&[i64]> = g.iter().map(|r| r.as_slice()).collect();
            let vs: Vec<Vec<BigRational>> = g.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let vq: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
            if let Some(l) = ZLattice::from_rows(2, &vs) {
                // the box is large enough for these sizes: coefficients of a
                // representation are bounded by |v|·max|minor| ≤ 6·32
                let brute = brute_contains(&gens, &v, 40);
                if brute {
                    prop_assert!(l.contains(&vq));
                }
                if l.contains(&vq) && gens.len() == 1 {
                    prop_assert!(brute);
                }
            }
        }

        #[test]
        fn intersection_is_contained_in_both(
            a in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 1..3),
            b in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 1..3),
        ) {
            let to = |m: &Vec<Vec<i64>>| -> Vec<Vec<BigRational>> { m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect() };
            if let (Some(x), Some(y)) = (ZLattice::from_rows(2, &to(&a)), ZLattice::from_rows(2, &to(&b))) {
                if let Some(i) = x.intersect(&y) {
                    prop_assert!(x.contains_lattice(&i));
                    prop_assert!(y.contains_lattice(&i));
                }
                // det(y)·ℤ² ⊆ y, so det(y)·x ⊆ x ∩ y when y has full rank
                if y.rank() == 2 {
                    let i = x.intersect(&y).unwrap();
                    let det = BigRational::from_integer(&y.integer_rows()[0][0] * &y.integer_rows()[1][1]);
                    for w in x.basis() {
                        let scaled: Vec<BigRational> = w.iter().map(|e| e * &det).collect();
                        prop_assert!(i.contains(&scaled));
                    }
                }
            }
        }
    }
}
