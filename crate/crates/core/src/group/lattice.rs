//! Integer lattices in row-style Hermite normal form.
//!
//! A [`Lattice`] is a subgroup of `Z^n` stored by its unique HNF basis: rows
//! are in echelon form, every pivot is positive, and entries above a pivot
//! lie in `[0, pivot)`. Equality of values is therefore equality of sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer vector.
pub type IVec = Vec<BigInt>;

pub(crate) fn ivec(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[BigInt]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn axpy(y: &mut [BigInt], q: &BigInt, x: &[BigInt]) {
    // y -= q * x
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= q * xi;
    }
}

fn pivot_of(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Result of an echelon reduction `U * M = [H; 0]` with `U` unimodular.
pub(crate) struct Echelon {
    /// Nonzero rows of the HNF.
    pub rows: Vec<IVec>,
    /// Unimodular transform, one row per input row.
    pub transform: Vec<IVec>,
}

impl Echelon {
    /// Left kernel basis of the input matrix.
    pub fn kernel(&self) -> &[IVec] {
        &self.transform[self.rows.len()..]
    }
}

/// Hermite normal form of the row span of `input`, tracking the transform.
pub(crate) fn echelon(input: &[IVec], ncols: usize) -> Echelon {
    let m = input.len();
    let mut a: Vec<IVec> = input.to_vec();
    let mut u: Vec<IVec> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); m];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = piv else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (top, rest) = a.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[r]);
                let (top, rest) = u.split_at_mut(i);
                axpy(&mut rest[0], &q, &top[r]);
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let (top, rest) = a.split_at_mut(r);
            axpy(&mut top[i], &q, &rest[0]);
            let (top, rest) = u.split_at_mut(r);
            axpy(&mut top[i], &q, &rest[0]);
        }
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, transform: u }
}

/// Subgroup of `Z^n` in canonical HNF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    dim: usize,
    basis: Vec<IVec>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut row = vec![BigInt::zero(); dim];
                row[i] = BigInt::one();
                row
            })
            .collect();
        Lattice { dim, basis }
    }

    /// Lattice spanned by `gens` (any integer vectors of length `dim`).
    pub fn span(dim: usize, gens: &[IVec]) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        Lattice { dim, basis: echelon(gens, dim).rows }
    }

    /// Accepts an already canonical basis; returns `None` if it is not the HNF.
    pub fn from_hnf(dim: usize, basis: Vec<IVec>) -> Option<Self> {
        if basis.iter().any(|r| r.len() != dim) {
            return None;
        }
        let canon = Self::span(dim, &basis);
        (canon.basis == basis).then_some(canon)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IVec] {
        &self.basis
    }

    fn pivots(&self) -> impl Iterator<Item = (usize, &IVec)> {
        self.basis.iter().map(|r| (pivot_of(r).expect("nonzero HNF row"), r))
    }

    /// Canonical representative of `v + L`: the unique remainder with every
    /// pivot coordinate in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> IVec {
        let mut v = v.to_vec();
        for (p, row) in self.pivots() {
            let q = v[p].div_floor(&row[p]);
            if !q.is_zero() {
                axpy(&mut v, &q, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in self.pivots() {
            let (q, rem) = v[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                axpy(&mut v, &q, row);
            }
        }
        is_zero(&v)
    }

    /// Coefficients of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<IVec> {
        let mut v = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (p, row) in self.pivots() {
            let (q, rem) = v[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut v, &q, row);
            out.push(q);
        }
        is_zero(&v).then_some(out)
    }

    /// `sum_i c_i * basis_i`.
    pub fn combine(&self, coeffs: &[BigInt]) -> IVec {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<IVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::span(self.dim, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(self.dim);
        }
        let k = self.rank();
        let stacked: Vec<IVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        let ech = echelon(&stacked, self.dim);
        let gens: Vec<IVec> = ech.kernel().iter().map(|c| self.combine(&c[..k])).collect();
        Lattice::span(self.dim, &gens)
    }

    /// Image under a coordinate map that is an automorphism of `Z^n`
    /// (used for the sign action).
    pub fn map(&self, f: impl Fn(&[BigInt]) -> IVec) -> Lattice {
        let gens: Vec<IVec> = self.basis.iter().map(|r| f(r)).collect();
        Lattice::span(self.dim, &gens)
    }

    /// `[self : sub]` for `sub <= self`; `None` when the index is infinite.
    pub fn index_of(&self, sub: &Lattice) -> Option<BigInt> {
        if sub.rank() != self.rank() {
            return None;
        }
        let coeffs: Vec<IVec> = sub
            .basis
            .iter()
            .map(|r| self.coords(r).expect("sublattice"))
            .collect();
        let h = echelon(&coeffs, self.rank());
        Some(
            h.rows
                .iter()
                .enumerate()
                .map(|(i, r)| r[i].clone())
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Representatives of `self / sub` (finite index required), one per coset.
    pub fn transversal(&self, sub: &Lattice) -> Option<Vec<IVec>> {
        self.index_of(sub)?;
        let k = self.rank();
        let coeffs: Vec<IVec> = sub
            .basis
            .iter()
            .map(|r| self.coords(r).expect("sublattice"))
            .collect();
        let h = echelon(&coeffs, k);
        let diag: Vec<BigInt> = (0..k).map(|i| h.rows[i][i].clone()).collect();
        let mut out = Vec::new();
        let mut x = vec![BigInt::zero(); k];
        loop {
            out.push(self.combine(&x));
            // odometer over 0 <= x_i < diag_i
            let mut i = k;
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                x[i] += 1;
                if x[i] < diag[i] {
                    break;
                }
                x[i] = BigInt::zero();
            }
        }
    }
}

/// Some point of `(p + l1) ∩ (q + l2)`, if the intersection is nonempty.
pub(crate) fn affine_meet(p: &[BigInt], l1: &Lattice, q: &[BigInt], l2: &Lattice) -> Option<IVec> {
    let target = sub(q, p);
    if is_zero(&target) {
        return Some(p.to_vec());
    }
    let k1 = l1.rank();
    let stacked: Vec<IVec> = l1.basis.iter().chain(&l2.basis).cloned().collect();
    if stacked.is_empty() {
        return None;
    }
    let ech = echelon(&stacked, l1.dim);
    // coordinates of target in the echelon rows
    let span = Lattice { dim: l1.dim, basis: ech.rows.clone() };
    let d = span.coords(&target)?;
    let m = stacked.len();
    let mut c = vec![BigInt::zero(); m];
    for (di, urow) in d.iter().zip(&ech.transform) {
        for (cj, uj) in c.iter_mut().zip(urow) {
            *cj += di * uj;
        }
    }
    Some(add(p, &l1.combine(&c[..k1])))
}
