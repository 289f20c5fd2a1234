use super::ring::Monomial;

/// A monomial ideal, stored by its minimal generators in sorted order.
/// No generators means the zero ideal; the generator `1` means the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        assert!(gens.iter().all(|g| g.nvars() == nvars), "generator in wrong ring");
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, [Monomial::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)));
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `self^n`, minimalized. `n = 0` gives the unit ideal.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// The index of the first generator dividing `m`.
    pub fn first_divisor(&self, m: &Monomial) -> Option<usize> {
        self.gens.iter().position(|g| g.divides(m))
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then(b.cmp(a)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    // x before y: descending exponent order
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn powers() {
        let a = MonomialIdeal::new(2, [m(&[1, 0]), m(&[0, 1])]);
        assert_eq!(a.power(2).gens(), &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        let p = MonomialIdeal::new(2, [m(&[2, 1])]);
        assert_eq!(p.power(3).gens(), &[m(&[6, 3])]);
        let b = MonomialIdeal::new(2, [m(&[1, 0]), m(&[0, 2])]);
        assert_eq!(b.power(2).gens(), &[m(&[2, 0]), m(&[1, 2]), m(&[0, 4])]);
    }

    #[test]
    fn minimalizes() {
        let a = MonomialIdeal::new(2, [m(&[2, 0]), m(&[1, 0]), m(&[1, 1]), m(&[1, 0])]);
        assert_eq!(a.gens(), &[m(&[1, 0])]);
        assert!(MonomialIdeal::new(2, [m(&[0, 0]), m(&[3, 0])]).is_unit());
    }

    proptest! {
        #[test]
        fn power_additivity(gens in prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..4), p in 1u32..3, q in 1u32..3) {
            let a = MonomialIdeal::new(2, gens.into_iter().map(Monomial::new));
            let lhs = a.power(p + q);
            let rhs = a.power(p).product(&a.power(q));
            for g in lhs.gens() {
                prop_assert!(rhs.contains(g));
            }
            for g in rhs.gens() {
                prop_assert!(lhs.contains(g));
            }
        }
    }
}
