//! Finitely generated abelian degree groups, their elements, epimorphisms
//! between them, and finite degree windows.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeGroup {
    free_rank: usize,
    torsion_orders: Vec<i64>,
}

impl DegreeGroup {
    pub fn new(free_rank: usize, torsion_orders: Vec<i64>) -> Result<Self> {
        if let Some(t) = torsion_orders.iter().find(|&&t| t < 2) {
            return Err(Error::InvalidArgument(format!(
                "torsion order {t} must be at least 2"
            )));
        }
        Ok(DegreeGroup {
            free_rank,
            torsion_orders,
        })
    }

    pub fn free(rank: usize) -> Self {
        DegreeGroup {
            free_rank: rank,
            torsion_orders: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion_orders
    }

    /// Number of coordinates (free plus torsion).
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_size(&self) -> usize {
        self.torsion_orders.iter().map(|&t| t as usize).product()
    }

    /// Builds a degree, reducing torsion coordinates.
    pub fn degree(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<Degree> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(Error::DimensionMismatch(format!(
                "degree has {}+{} coordinates, group {} expects {}+{}",
                free.len(),
                torsion.len(),
                self,
                self.free_rank,
                self.torsion_orders.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&t, &m)| t.mod_floor(&m))
            .collect();
        Ok(Degree { free, torsion })
    }

    /// Convenience for torsion-free groups.
    pub fn free_degree(&self, free: &[i64]) -> Degree {
        self.degree(free.to_vec(), vec![0; self.torsion_orders.len()])
            .expect("free degree of wrong length")
    }

    pub fn zero(&self) -> Degree {
        Degree {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_orders.len()],
        }
    }

    pub fn contains(&self, d: &Degree) -> bool {
        d.free.len() == self.free_rank
            && d.torsion.len() == self.torsion_orders.len()
            && d
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .all(|(&t, &m)| (0..m).contains(&t))
    }

    pub fn check(&self, d: &Degree) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::NotInGroup {
                degree: d.to_string(),
                group: self.to_string(),
            })
        }
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.combine(a, b, 1)
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Degree {
        self.combine(a, b, -1)
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        self.sub(&self.zero(), a)
    }

    /// `k * a`.
    pub fn scale(&self, k: i64, a: &Degree) -> Degree {
        Degree {
            free: a.free.iter().map(|x| k * x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(t, m)| (k * t).mod_floor(m))
                .collect(),
        }
    }

    fn combine(&self, a: &Degree, b: &Degree, sign: i64) -> Degree {
        debug_assert!(self.contains(a) && self.contains(b));
        Degree {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + sign * y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_orders)
                .map(|((x, y), m)| (x + sign * y).mod_floor(m))
                .collect(),
        }
    }

    /// Every torsion element, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.torsion_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |t| {
                        let mut p = prefix.clone();
                        p.push(t);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for DegreeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.torsion_orders.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion_orders {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of a [`DegreeGroup`], torsion coordinates stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    free: Vec<i64>,
    torsion: Vec<i64>,
}

impl Degree {
    pub fn free_part(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[i64] {
        &self.torsion
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        if self.torsion.is_empty() {
            write!(f, "({})", join(&self.free))
        } else {
            write!(f, "({};{})", join(&self.free), join(&self.torsion))
        }
    }
}

/// Parses `(a,b,...)` or `(a,...;t,...)`. Torsion coordinates are not
/// reduced; pass the result through [`DegreeGroup::degree`].
impl FromStr for Degree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed degree `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (free, torsion) = match inner.split_once(';') {
            Some((a, b)) => (a, b),
            None => (inner, ""),
        };
        let parse = |part: &str| -> Result<Vec<i64>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        Ok(Degree {
            free: parse(free)?,
            torsion: parse(torsion)?,
        })
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A homomorphism `G -> H` given by the images of the generators of `G`.
///
/// `matrix[r][c]` is coordinate `r` of the image of generator `c`; free
/// generators of the source come first, then torsion generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEpimorphism {
    source: DegreeGroup,
    target: DegreeGroup,
    matrix: Vec<Vec<i64>>,
}

impl GroupEpimorphism {
    /// Validates shape and well-definedness on torsion. Surjectivity is a
    /// separate check, see [`GroupEpimorphism::verify_surjective`].
    pub fn new(source: DegreeGroup, target: DegreeGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.ngens() || matrix.iter().any(|r| r.len() != source.ngens()) {
            return Err(Error::DimensionMismatch(format!(
                "map {source} -> {target} needs a {}x{} matrix",
                target.ngens(),
                source.ngens()
            )));
        }
        let psi = GroupEpimorphism {
            source,
            target,
            matrix,
        };
        for (k, &order) in psi.source.torsion_orders.iter().enumerate() {
            let col = psi.source.free_rank + k;
            for r in 0..psi.target.ngens() {
                let v = order * psi.matrix[r][col];
                let ok = if r < psi.target.free_rank {
                    v == 0
                } else {
                    v.mod_floor(&psi.target.torsion_orders[r - psi.target.free_rank]) == 0
                };
                if !ok {
                    return Err(Error::IllDefinedOnTorsion(k));
                }
            }
        }
        Ok(psi)
    }

    /// Like [`GroupEpimorphism::new`] but also rejects non-surjective maps.
    pub fn epi(source: DegreeGroup, target: DegreeGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let psi = Self::new(source, target, matrix)?;
        if !psi.verify_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(psi)
    }

    pub fn identity(group: &DegreeGroup) -> Self {
        let n = group.ngens();
        let matrix = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
            .collect();
        GroupEpimorphism {
            source: group.clone(),
            target: group.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &DegreeGroup {
        &self.source
    }

    pub fn target(&self) -> &DegreeGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Self::identity(&self.source)
    }

    pub fn apply(&self, g: &Degree) -> Result<Degree> {
        self.source.check(g)?;
        let coords: Vec<i64> = g.free.iter().chain(&g.torsion).copied().collect();
        let image: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&coords).map(|(a, b)| a * b).sum())
            .collect();
        let (free, torsion) = image.split_at(self.target.free_rank);
        self.target.degree(free.to_vec(), torsion.to_vec())
    }

    /// The images of the source generators together with the torsion
    /// relations of the target span the coordinate lattice `Z^ngens(H)`
    /// exactly when every elementary divisor of that lattice is 1.
    pub fn verify_surjective(&self) -> bool {
        let n = self.target.ngens();
        if n == 0 {
            return true;
        }
        let mut columns: Vec<Vec<i128>> = (0..self.source.ngens())
            .map(|c| (0..n).map(|r| self.matrix[r][c] as i128).collect())
            .collect();
        for (k, &m) in self.target.torsion_orders.iter().enumerate() {
            let mut col = vec![0i128; n];
            col[self.target.free_rank + k] = m as i128;
            columns.push(col);
        }
        let divisors = elementary_divisors(n, columns);
        divisors.len() == n && divisors.iter().all(|&d| d == 1)
    }

    /// For an epimorphism, the kernel is finite iff the free ranks agree.
    pub fn kernel_is_finite(&self) -> Result<bool> {
        if !self.verify_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(self.source.free_rank == self.target.free_rank)
    }

    /// Elements of the kernel when it is finite; `None` otherwise.
    pub fn finite_kernel(&self) -> Result<Option<Vec<Degree>>> {
        if !self.kernel_is_finite()? {
            return Ok(None);
        }
        // a finite kernel meets the free part trivially
        let zero = self.target.zero();
        let mut out = Vec::new();
        for t in self.source.torsion_elements() {
            let g = Degree {
                free: vec![0; self.source.free_rank],
                torsion: t,
            };
            if self.apply(&g)? == zero {
                out.push(g);
            }
        }
        Ok(Some(out))
    }

    pub fn fiber(&self, h: &Degree, gw: &DegreeWindow) -> Result<Vec<Degree>> {
        self.target.check(h)?;
        let mut out = Vec::new();
        for g in gw.iter() {
            if self.apply(g)? == *h {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    /// Whether the window contains the entire fiber over `h`. Decidable only
    /// for finite kernels: the fiber is a coset of the kernel, and it is
    /// never empty because the map is onto.
    pub fn fiber_is_complete(&self, h: &Degree, gw: &DegreeWindow) -> Result<bool> {
        match self.finite_kernel()? {
            Some(ker) => Ok(self.fiber(h, gw)?.len() == ker.len()),
            None => Ok(false),
        }
    }
}

/// Elementary divisors (nonzero diagonal of the Smith form) of the integer
/// matrix with the given columns, each of length `nrows`.
fn elementary_divisors(nrows: usize, columns: Vec<Vec<i128>>) -> Vec<i128> {
    let ncols = columns.len();
    let mut a: Vec<Vec<i128>> = (0..nrows)
        .map(|r| (0..ncols).map(|c| columns[c][r]).collect())
        .collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..nrows {
            for c in t..ncols {
                if a[r][c] != 0
                    && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..nrows {
                let q = a[r][t] / p;
                if q != 0 {
                    for c in t..ncols {
                        a[r][c] -= q * a[t][c];
                    }
                }
                dirty |= a[r][t] != 0;
            }
            for c in t + 1..ncols {
                let q = a[t][c] / p;
                if q != 0 {
                    for r in t..nrows {
                        a[r][c] -= q * a[r][t];
                    }
                }
                dirty |= a[t][c] != 0;
            }
            if !dirty {
                // enforce divisibility of the remaining block by the pivot
                let mut fix = None;
                'scan: for r in t + 1..nrows {
                    for c in t + 1..ncols {
                        if a[r][c] % p != 0 {
                            fix = Some(r);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    Some(r) => {
                        for c in t..ncols {
                            a[t][c] += a[r][c];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for r in t..nrows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..ncols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// A finite explicit set of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    group: DegreeGroup,
    degrees: Vec<Degree>,
}

impl DegreeWindow {
    pub fn from_degrees(group: &DegreeGroup, degrees: impl IntoIterator<Item = Degree>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for d in degrees {
            group.check(&d)?;
            set.insert(d);
        }
        Ok(DegreeWindow {
            group: group.clone(),
            degrees: set.into_iter().collect(),
        })
    }

    /// The box `∏ [lo_i, hi_i]` on the free part times the whole torsion subgroup.
    pub fn boxed(group: &DegreeGroup, lo: &[i64], hi: &[i64]) -> Result<Self> {
        if lo.len() != group.free_rank || hi.len() != group.free_rank {
            return Err(Error::DimensionMismatch(format!(
                "window bounds need {} coordinates",
                group.free_rank
            )));
        }
        let mut frees = vec![Vec::new()];
        for (&l, &h) in lo.iter().zip(hi) {
            frees = frees
                .into_iter()
                .flat_map(|p| {
                    (l..=h).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        let torsion = group.torsion_elements();
        let degrees = frees.into_iter().flat_map(|f| {
            torsion.iter().map(move |t| Degree {
                free: f.clone(),
                torsion: t.clone(),
            })
        });
        Self::from_degrees(group, degrees)
    }

    /// `[lo, hi]^free_rank` times the torsion subgroup.
    pub fn cube(group: &DegreeGroup, lo: i64, hi: i64) -> Result<Self> {
        let r = group.free_rank;
        Self::boxed(group, &vec![lo; r], &vec![hi; r])
    }

    pub fn group(&self) -> &DegreeGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn contains(&self, d: &Degree) -> bool {
        self.degrees.binary_search(d).is_ok()
    }

    pub fn position(&self, d: &Degree) -> Option<usize> {
        self.degrees.binary_search(d).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Degree> {
        self.degrees.iter()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// The window translated by `-g`, i.e. `{d - g}`.
    pub fn translate(&self, g: &Degree) -> DegreeWindow {
        let degrees = self.degrees.iter().map(|d| self.group.sub(d, g));
        Self::from_degrees(&self.group, degrees).expect("translation stays in group")
    }

    /// Image of the window under `psi`.
    pub fn image(&self, psi: &GroupEpimorphism) -> Result<DegreeWindow> {
        let imgs = self
            .degrees
            .iter()
            .map(|d| psi.apply(d))
            .collect::<Result<Vec<_>>>()?;
        Self::from_degrees(psi.target(), imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize) -> DegreeGroup {
        DegreeGroup::free(n)
    }

    fn sum_map() -> GroupEpimorphism {
        GroupEpimorphism::new(z(2), z(1), vec![vec![1, 1]]).unwrap()
    }

    fn z_z2() -> DegreeGroup {
        DegreeGroup::new(1, vec![2]).unwrap()
    }

    fn proj() -> GroupEpimorphism {
        GroupEpimorphism::new(z_z2(), z(1), vec![vec![1, 0]]).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(
            sum_map().apply(&z(2).free_degree(&[2, -1])).unwrap(),
            z(1).free_degree(&[1])
        );
        let id = GroupEpimorphism::identity(&z(1));
        assert_eq!(id.apply(&z(1).free_degree(&[5])).unwrap(), z(1).free_degree(&[5]));
        let g = z_z2().degree(vec![3], vec![1]).unwrap();
        assert_eq!(proj().apply(&g).unwrap(), z(1).free_degree(&[3]));
    }

    #[test]
    fn apply_rejects_wrong_group() {
        assert!(sum_map().apply(&z(1).free_degree(&[1])).is_err());
    }

    #[test]
    fn surjectivity() {
        assert!(sum_map().verify_surjective());
        let double = GroupEpimorphism::new(z(1), z(1), vec![vec![2]]).unwrap();
        assert!(!double.verify_surjective());
        let z2 = DegreeGroup::new(0, vec![2]).unwrap();
        let onto_torsion = GroupEpimorphism::new(z_z2(), z2, vec![vec![0, 1]]).unwrap();
        assert!(onto_torsion.verify_surjective());
        // (a,b) -> (a+b, a-b) has index 2
        let idx2 = GroupEpimorphism::new(z(2), z(2), vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(!idx2.verify_surjective());
        // Z -> Z/2 + Z/3 via 1 -> (1,1) is onto (Z/6)
        let z23 = DegreeGroup::new(0, vec![2, 3]).unwrap();
        let crt = GroupEpimorphism::new(z(1), z23, vec![vec![1], vec![1]]).unwrap();
        assert!(crt.verify_surjective());
        // Z -> Z/2 + Z/2 cannot be onto
        let z22 = DegreeGroup::new(0, vec![2, 2]).unwrap();
        let klein = GroupEpimorphism::new(z(1), z22, vec![vec![1], vec![1]]).unwrap();
        assert!(!klein.verify_surjective());
    }

    #[test]
    fn torsion_well_definedness() {
        // Z/2 -> Z cannot send the generator to 1
        let z2 = DegreeGroup::new(0, vec![2]).unwrap();
        assert!(matches!(
            GroupEpimorphism::new(z2, z(1), vec![vec![1]]),
            Err(Error::IllDefinedOnTorsion(0))
        ));
        let z4 = DegreeGroup::new(0, vec![4]).unwrap();
        let z2 = DegreeGroup::new(0, vec![2]).unwrap();
        assert!(GroupEpimorphism::new(z4, z2, vec![vec![1]]).is_ok());
    }

    #[test]
    fn finite_kernel() {
        assert!(proj().kernel_is_finite().unwrap());
        assert!(!sum_map().kernel_is_finite().unwrap());
        assert!(GroupEpimorphism::identity(&z(2)).kernel_is_finite().unwrap());
        let double = GroupEpimorphism::new(z(1), z(1), vec![vec![2]]).unwrap();
        assert!(matches!(double.kernel_is_finite(), Err(Error::NotSurjective)));
        assert_eq!(proj().finite_kernel().unwrap().unwrap().len(), 2);
    }

    #[test]
    fn fibers() {
        let gw = DegreeWindow::cube(&z(2), -2, 2).unwrap();
        let f = sum_map().fiber(&z(1).free_degree(&[1]), &gw).unwrap();
        let expect: Vec<Degree> = [[-1, 2], [0, 1], [1, 0], [2, -1]]
            .iter()
            .map(|p| z(2).free_degree(p))
            .collect();
        assert_eq!(f, expect);

        let id = GroupEpimorphism::identity(&z(1));
        let w = DegreeWindow::cube(&z(1), 0, 5).unwrap();
        assert_eq!(id.fiber(&z(1).free_degree(&[3]), &w).unwrap(), vec![z(1).free_degree(&[3])]);

        let w = DegreeWindow::cube(&z_z2(), 0, 0).unwrap();
        let f = proj().fiber(&z(1).free_degree(&[0]), &w).unwrap();
        assert_eq!(f.len(), 2);
        assert!(proj().fiber_is_complete(&z(1).free_degree(&[0]), &w).unwrap());
        assert!(!proj().fiber_is_complete(&z(1).free_degree(&[1]), &w).unwrap());
    }

    #[test]
    fn degree_text_round_trip() {
        let g = z_z2().degree(vec![-3], vec![1]).unwrap();
        assert_eq!(g.to_string(), "(-3;1)");
        assert_eq!("(-3;1)".parse::<Degree>().unwrap(), g);
        assert_eq!("( 1, 0 )".parse::<Degree>().unwrap(), z(2).free_degree(&[1, 0]));
        assert!("1,0".parse::<Degree>().is_err());
    }

    proptest! {
        #[test]
        fn apply_is_additive(a in -20i64..20, b in -20i64..20, t in 0i64..2, c in -20i64..20, d in -20i64..20, s in 0i64..2) {
            let g = DegreeGroup::new(2, vec![2]).unwrap();
            let h = DegreeGroup::new(1, vec![2]).unwrap();
            let psi = GroupEpimorphism::new(g.clone(), h.clone(), vec![vec![1, 2, 0], vec![1, 0, 1]]).unwrap();
            let x = g.degree(vec![a, b], vec![t]).unwrap();
            let y = g.degree(vec![c, d], vec![s]).unwrap();
            let lhs = psi.apply(&g.add(&x, &y)).unwrap();
            let rhs = h.add(&psi.apply(&x).unwrap(), &psi.apply(&y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fibers_partition_window(lo in -3i64..0, hi in 0i64..3) {
            let gw = DegreeWindow::cube(&z(2), lo, hi).unwrap();
            let psi = sum_map();
            let hs = gw.image(&psi).unwrap();
            let mut seen = BTreeSet::new();
            for h in hs.iter() {
                for g in psi.fiber(h, &gw).unwrap() {
                    prop_assert!(seen.insert(g));
                }
            }
            prop_assert_eq!(seen.len(), gw.len());
        }

        #[test]
        fn finite_kernel_fibers_are_bounded(lo in -6i64..0, hi in 0i64..6, h in -6i64..6) {
            let gw = DegreeWindow::cube(&z_z2(), lo, hi).unwrap();
            let f = proj().fiber(&z(1).free_degree(&[h]), &gw).unwrap();
            if (lo..=hi).contains(&h) {
                prop_assert_eq!(f.len(), 2);
            } else {
                prop_assert_eq!(f.len(), 0);
            }
        }
    }
}
