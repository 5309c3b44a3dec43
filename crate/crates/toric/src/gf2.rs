//! Multivariate polynomials over GF(2) with a weighted graded reverse
//! lexicographic order, plus Buchberger's algorithm. The substrate for the
//! homology and quantum ring presentations.
//!
//! A polynomial is a set of monomials (presence = coefficient 1), so
//! addition is symmetric difference and every polynomial is monic.

use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Exponent vector; arity fixed by the ambient [`Ring`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeSet<Mono>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_mono(m: Mono) -> Self {
        Poly {
            terms: BTreeSet::from([m]),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_mono(Mono::one(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// GF(2) addition: symmetric difference of term sets.
    pub fn add(&self, other: &Poly) -> Poly {
        Poly {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn add_mono(&mut self, m: Mono) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.add_mono(a.mul(b));
            }
        }
        out
    }
}

/// Polynomial ring context: arity and the positive weight of each
/// variable. The order is weighted-degree first, grevlex tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub nvars: usize,
    pub weights: Vec<u64>,
}

impl Ring {
    pub fn new(weights: Vec<u64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0));
        Ring {
            nvars: weights.len(),
            weights,
        }
    }

    pub fn weighted_degree(&self, m: &Mono) -> u64 {
        m.0.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    /// Weighted grevlex: higher weighted degree wins; on a tie, the
    /// monomial whose last differing exponent is smaller wins.
    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.weighted_degree(a).cmp(&self.weighted_degree(b)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.nvars).rev() {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }

    pub fn leading(&self, p: &Poly) -> Option<Mono> {
        p.terms
            .iter()
            .max_by(|a, b| self.cmp_mono(a, b))
            .cloned()
    }

    /// Full normal form with respect to a list of (monic) generators.
    /// Every reduction step strictly decreases the reduced term in the
    /// monomial order, so this terminates.
    pub fn normal_form(&self, f: &Poly, gens: &[Poly]) -> Poly {
        let lts: Vec<(Mono, &Poly)> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| (self.leading(g).unwrap(), g))
            .collect();
        let mut rest = f.clone();
        let mut out = Poly::zero();
        while let Some(t) = self.leading(&rest) {
            match lts.iter().find(|(lt, _)| lt.divides(&t)) {
                Some((lt, g)) => {
                    let factor = t.div(lt);
                    rest = rest.add(&g.mul_mono(&factor));
                }
                None => {
                    rest.terms.remove(&t);
                    out.terms.insert(t);
                }
            }
        }
        out
    }

    /// S-polynomial; over GF(2) both generators are monic.
    fn s_poly(&self, f: &Poly, g: &Poly) -> Poly {
        let lf = self.leading(f).unwrap();
        let lg = self.leading(g).unwrap();
        let l = lf.lcm(&lg);
        f.mul_mono(&l.div(&lf)).add(&g.mul_mono(&l.div(&lg)))
    }

    /// Buchberger's algorithm with interreduction; deterministic for a
    /// deterministic input order.
    pub fn groebner(&self, gens: &[Poly]) -> Vec<Poly> {
        let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let mut pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|i| (0..i).map(move |j| (j, i)))
            .collect();
        while let Some((i, j)) = pairs.pop() {
            let li = self.leading(&basis[i]).unwrap();
            let lj = self.leading(&basis[j]).unwrap();
            // coprime leading terms: S-polynomial reduces to zero
            if li.mul(&lj) == li.lcm(&lj) {
                continue;
            }
            let s = self.s_poly(&basis[i], &basis[j]);
            let r = self.normal_form(&s, &basis);
            if !r.is_zero() {
                let k = basis.len();
                pairs.extend((0..k).map(|i| (i, k)));
                basis.push(r);
            }
        }
        // interreduce
        let mut reduced: Vec<Poly> = Vec::new();
        for i in 0..basis.len() {
            let mut others: Vec<Poly> = basis[..i].to_vec();
            others.extend_from_slice(&basis[i + 1..]);
            let r = self.normal_form(&basis[i], &others);
            if !r.is_zero() {
                basis[i] = r;
            } else {
                basis[i] = Poly::zero();
            }
        }
        for g in basis.into_iter().filter(|g| !g.is_zero()) {
            if !reduced.contains(&g) {
                reduced.push(g);
            }
        }
        reduced.sort_by(|a, b| {
            self.cmp_mono(&self.leading(a).unwrap(), &self.leading(b).unwrap())
        });
        reduced
    }

    /// Monomials of the quotient ring not divisible by any leading term,
    /// grouped by weighted degree: index d holds the monomials of
    /// weighted degree `step * d`. Requires all weights equal to `step`
    /// for the grading to be exhaustive. Stops at the first empty level
    /// (valid for graded ideals: reducibility propagates upward).
    pub fn standard_monomials(&self, gb: &[Poly], step: u64) -> Vec<Vec<Mono>> {
        assert!(self.weights.iter().all(|&w| w == step));
        let lts: Vec<Mono> = gb.iter().map(|g| self.leading(g).unwrap()).collect();
        let mut levels: Vec<Vec<Mono>> = vec![vec![Mono::one(self.nvars)]];
        if lts.iter().any(|lt| lt.total_degree() == 0) {
            return vec![Vec::new()];
        }
        loop {
            let prev = levels.last().unwrap();
            let mut next: BTreeSet<Mono> = BTreeSet::new();
            for m in prev {
                for i in 0..self.nvars {
                    let cand = m.mul(&Mono::var(self.nvars, i));
                    if !lts.iter().any(|lt| lt.divides(&cand)) {
                        next.insert(cand);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Mono {
        Mono(exps.to_vec())
    }

    #[test]
    fn add_is_symmetric_difference() {
        let a = Poly::from_mono(m(&[1, 0])).add(&Poly::from_mono(m(&[0, 1])));
        let b = Poly::from_mono(m(&[0, 1]));
        let s = a.add(&b);
        assert_eq!(s, Poly::from_mono(m(&[1, 0])));
        assert!(a.add(&a).is_zero());
    }

    #[test]
    fn grevlex_order() {
        let ring = Ring::new(vec![1, 1, 1]);
        // x > y > z in grevlex at equal degree
        assert_eq!(
            ring.cmp_mono(&m(&[1, 0, 0]), &m(&[0, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(
            ring.cmp_mono(&m(&[0, 2, 0]), &m(&[1, 0, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn weighted_order_prefers_light_q() {
        // variables (x, q) with weights (2, 6): x^3 and q have equal
        // degree; grevlex puts x^3 first.
        let ring = Ring::new(vec![2, 6]);
        assert_eq!(ring.cmp_mono(&m(&[3, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn groebner_univariate() {
        // ideal (x^3) in GF(2)[x]: standard monomials 1, x, x^2
        let ring = Ring::new(vec![2]);
        let gb = ring.groebner(&[Poly::from_mono(m(&[3]))]);
        let basis = ring.standard_monomials(&gb, 2);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn groebner_cp1xcp1() {
        // (x^2, y^2): basis 1, x, y, xy
        let ring = Ring::new(vec![2, 2]);
        let gb = ring.groebner(&[
            Poly::from_mono(m(&[2, 0])),
            Poly::from_mono(m(&[0, 2])),
        ]);
        let basis = ring.standard_monomials(&gb, 2);
        let total: usize = basis.iter().map(|l| l.len()).sum();
        assert_eq!(total, 4);
        assert_eq!(basis.iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn normal_form_is_idempotent() {
        let ring = Ring::new(vec![2, 2]);
        let gb = ring.groebner(&[
            Poly::from_mono(m(&[2, 0])).add(&Poly::from_mono(m(&[0, 1]))),
            Poly::from_mono(m(&[0, 3])),
        ]);
        let f = Poly::from_mono(m(&[5, 2]));
        let nf = ring.normal_form(&f, &gb);
        assert_eq!(ring.normal_form(&nf, &gb), nf);
    }
}
