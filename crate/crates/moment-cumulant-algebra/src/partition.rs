//! Integer partitions in multiplicity form `1^{l_1} 2^{l_2} ...`.

use crate::coefficient::{factorial, pow, Coefficient};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    /// `multiplicities[j-1] = l_j`; length equals `n`.
    pub multiplicities: Vec<usize>,
}

impl Partition {
    pub fn n(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(j, &l)| (j + 1) * l).sum()
    }

    /// `l = sum_j l_j`.
    pub fn parts_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut p = Vec::new();
        for (j, &l) in self.multiplicities.iter().enumerate().rev() {
            p.extend(std::iter::repeat(j + 1).take(l));
        }
        p
    }

    /// `a_nu = n! / prod_j (l_j! (j!)^{l_j})`, the number of set partitions of this shape.
    pub fn set_partition_count<C: Coefficient>(&self) -> C {
        let mut den = C::one();
        for (j, &l) in self.multiplicities.iter().enumerate() {
            den = den * factorial::<C>(l) * pow(&factorial::<C>(j + 1), l);
        }
        factorial::<C>(self.n()) / den
    }

    /// `(-1)^{l-1} (l-1)! a_nu`.
    pub fn signed_count<C: Coefficient>(&self) -> C {
        let l = self.parts_count();
        if l == 0 {
            return C::zero();
        }
        let v = factorial::<C>(l - 1) * self.set_partition_count::<C>();
        if l % 2 == 0 {
            -v
        } else {
            v
        }
    }

    /// `prod_j x_j^{l_j}` with `x_j = values[j-1]`.
    pub fn monomial<C: Coefficient>(&self, values: &[C]) -> C {
        let mut acc = C::one();
        for (j, &l) in self.multiplicities.iter().enumerate() {
            if l > 0 {
                acc = acc * pow(&values[j], l);
            }
        }
        acc
    }
}

/// All partitions of `n`, largest part first in lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Partition>) {
        if rem == 0 {
            let mut m = vec![0; n];
            for &p in cur.iter() {
                m[p - 1] += 1;
            }
            out.push(Partition { multiplicities: m });
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, n, out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Partition { multiplicities: Vec::new() }];
    }
    rec(n, n, &mut cur, n, &mut out);
    out
}
