//! Deterministic enumeration: by max-norm, then lexicographically, then
//! `+1` before `-1`.

use num_bigint::BigInt;

use super::element::{Carrier, GroupElement, Sign};
use super::lattice::IVec;
use super::subgroup::Subgroup;

/// Integer vectors of length `n` with max-norm exactly `k`, in lexicographic order.
pub(crate) fn shell(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![-k; n];
    loop {
        if cur.iter().any(|x| x.abs() == k) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < k {
                cur[i] += 1;
                break;
            }
            cur[i] = -k;
        }
    }
}

fn signs(carrier: Carrier) -> &'static [Sign] {
    if carrier.has_sign() {
        &[Sign::Plus, Sign::Minus]
    } else {
        &[Sign::Plus]
    }
}

/// Every element whose translation has max-norm at most `radius`.
pub fn enumerate_ball(carrier: Carrier, radius: u64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for k in 0..=radius as i64 {
        out.extend(shell_elements(carrier, k));
    }
    out
}

/// Elements of norm exactly `k`.
pub(crate) fn shell_elements(carrier: Carrier, k: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for v in shell(carrier.dim(), k) {
        let v: IVec = v.into_iter().map(BigInt::from).collect();
        for &s in signs(carrier) {
            out.push(GroupElement::raw(carrier, v.clone(), s));
        }
    }
    out
}

/// Infinite walk through a subgroup in the coordinates of its HNF basis
/// (and reflection), shell by shell in the same order as [`enumerate_ball`].
/// Finite subgroups are walked once.
pub struct SubgroupWalk {
    subgroup: Subgroup,
    radius: i64,
    pending: std::vec::IntoIter<GroupElement>,
}

impl SubgroupWalk {
    pub fn new(subgroup: Subgroup) -> Self {
        SubgroupWalk { subgroup, radius: -1, pending: Vec::new().into_iter() }
    }
}

impl Iterator for SubgroupWalk {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        loop {
            if let Some(g) = self.pending.next() {
                return Some(g);
            }
            let rank = self.subgroup.lattice().rank();
            if rank == 0 && self.radius >= 0 {
                return None;
            }
            self.radius += 1;
            let c = self.subgroup.carrier();
            let refl = self.subgroup.reflection_element();
            let mut batch = Vec::new();
            for coords in shell(rank, self.radius) {
                let coords: IVec = coords.into_iter().map(BigInt::from).collect();
                let t = GroupElement::raw(c, self.subgroup.lattice().combine(&coords), Sign::Plus);
                if let Some(r) = &refl {
                    let reflected = GroupElement::raw(
                        c,
                        super::lattice::add(r.translation(), t.translation()),
                        Sign::Minus,
                    );
                    batch.push(t);
                    batch.push(reflected);
                } else {
                    batch.push(t);
                }
            }
            self.pending = batch.into_iter();
        }
    }
}
