//! The groupoid whose objects are colorings `f: {1..d} → {1..ℓ}` and whose
//! morphisms `f → g` are the permutations `σ` with `g∘σ = f`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::Composition;
use crate::perm::Perm;
use crate::report::Report;
use crate::{Error, Result};

/// A coloring of `d` positions with colors `1..=ℓ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorFn {
    ell: usize,
    values: Vec<usize>,
}

impl ColorFn {
    pub fn new(ell: usize, values: Vec<usize>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if let Some(&bad) = values.iter().find(|&&v| v == 0 || v > ell) {
            return Err(Error::OutOfRange { index: bad, max: ell });
        }
        Ok(ColorFn { ell, values })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    /// Color of position `i` (0-based position, 1-based color).
    pub fn color(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Rank in the lexicographic enumeration of all `ℓ^d` colorings.
    pub fn index(&self) -> usize {
        self.values.iter().fold(0, |acc, &v| acc * self.ell + (v - 1))
    }

    pub fn from_index(ell: usize, d: usize, mut index: usize) -> Self {
        let mut values = vec![0; d];
        for slot in values.iter_mut().rev() {
            *slot = index % ell + 1;
            index /= ell;
        }
        ColorFn { ell, values }
    }

    /// `λ_i = |f⁻¹(i)|`.
    pub fn type_of(&self) -> Composition {
        let mut parts = vec![0; self.ell];
        for &v in &self.values {
            parts[v - 1] += 1;
        }
        Composition::new(parts)
    }

    /// `f∘σ⁻¹`, the target of `σ` viewed as a morphism out of `f`.
    pub fn push(&self, sigma: &Perm) -> ColorFn {
        let mut values = vec![0; self.d()];
        for i in 0..self.d() {
            values[sigma.apply(i)] = self.values[i];
        }
        ColorFn { ell: self.ell, values }
    }

    /// Positions carrying color `c`, increasing.
    pub fn positions_of(&self, c: usize) -> Vec<usize> {
        (0..self.d()).filter(|&i| self.values[i] == c).collect()
    }

    /// Shifts every color by `shift`, cyclically in `1..=ℓ`.
    pub fn rotate(&self, shift: usize) -> ColorFn {
        let values = self.values.iter().map(|&v| (v - 1 + shift) % self.ell + 1).collect();
        ColorFn { ell: self.ell, values }
    }
}

impl fmt::Debug for ColorFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

impl Serialize for ColorFn {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

/// All `ℓ^d` objects in lexicographic order.
pub fn objects(ell: usize, d: usize, cap: usize) -> Result<Vec<ColorFn>> {
    if ell == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let count = (ell as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::cap("objects", count, cap));
    }
    Ok((0..count as usize).map(|i| ColorFn::from_index(ell, d, i)).collect())
}

/// `σ: f → g` with `g∘σ = f`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GMorphism {
    source: ColorFn,
    target: ColorFn,
    perm: Perm,
}

impl GMorphism {
    pub fn new(source: ColorFn, target: ColorFn, perm: Perm) -> Result<Self> {
        if source.ell != target.ell || source.d() != target.d() || perm.len() != source.d() {
            return Err(Error::ParameterMismatch);
        }
        if (0..source.d()).any(|i| target.values[perm.apply(i)] != source.values[i]) {
            return Err(Error::Invalid(alloc::format!(
                "{perm:?} is not a morphism {source:?} -> {target:?}"
            )));
        }
        Ok(GMorphism { source, target, perm })
    }

    /// The morphism `σ: f → f∘σ⁻¹`.
    pub fn from_source(source: ColorFn, perm: Perm) -> Self {
        let target = source.push(&perm);
        GMorphism { source, target, perm }
    }

    pub fn identity(f: &ColorFn) -> Self {
        GMorphism { source: f.clone(), target: f.clone(), perm: Perm::identity(f.d()) }
    }

    pub fn source(&self) -> &ColorFn {
        &self.source
    }

    pub fn target(&self) -> &ColorFn {
        &self.target
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.perm.is_identity()
    }

    pub fn inverse(&self) -> GMorphism {
        GMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            perm: self.perm.inverse(),
        }
    }
}

impl fmt::Debug for GMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}->{:?}", self.perm, self.source, self.target)
    }
}

impl Serialize for GMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GMorphism", 3)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("perm", &self.perm)?;
        st.end()
    }
}

/// `second ∘ first`; errors unless `first` ends where `second` starts.
pub fn compose(second: &GMorphism, first: &GMorphism) -> Result<GMorphism> {
    if first.target != second.source {
        return Err(Error::NotComposable);
    }
    Ok(GMorphism {
        source: first.source.clone(),
        target: second.target.clone(),
        perm: second.perm.compose(&first.perm),
    })
}

/// All morphisms `f → g`, sorted by the one-line notation of the permutation.
pub fn hom(f: &ColorFn, g: &ColorFn) -> Vec<GMorphism> {
    if f.ell != g.ell || f.d() != g.d() || f.type_of() != g.type_of() {
        return Vec::new();
    }
    let d = f.d();
    let classes: Vec<(Vec<usize>, Vec<usize>)> = (1..=f.ell)
        .map(|c| (f.positions_of(c), g.positions_of(c)))
        .filter(|(a, _)| !a.is_empty())
        .collect();
    let mut out: Vec<GMorphism> = classes
        .iter()
        .map(|(_, to)| to.iter().copied().permutations(to.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|choice| {
            let mut img = vec![0; d];
            for ((from, _), targets) in classes.iter().zip(&choice) {
                for (&i, &j) in from.iter().zip(targets) {
                    img[i] = j;
                }
            }
            GMorphism { source: f.clone(), target: g.clone(), perm: Perm::new(img).expect("bijection") }
        })
        .collect();
    if out.is_empty() {
        out.push(GMorphism::identity(f));
    }
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

/// `f_λ`: `λ_1` ones, then `λ_2` twos, and so on.
pub fn canonical_object(lambda: &Composition) -> ColorFn {
    let values = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| core::iter::repeat(i + 1).take(n))
        .collect();
    ColorFn { ell: lambda.ell().max(1), values }
}

/// The unique morphism `f → g` that is order preserving on each color class.
pub fn canonical_morphism(f: &ColorFn, g: &ColorFn) -> Result<GMorphism> {
    if f.ell != g.ell || f.d() != g.d() {
        return Err(Error::ParameterMismatch);
    }
    if f.type_of() != g.type_of() {
        return Err(Error::TypeMismatch);
    }
    let mut img = vec![0; f.d()];
    for c in 1..=f.ell {
        for (i, j) in f.positions_of(c).into_iter().zip(g.positions_of(c)) {
            img[i] = j;
        }
    }
    Ok(GMorphism { source: f.clone(), target: g.clone(), perm: Perm::new(img)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupoidSummary {
    pub ell: usize,
    pub d: usize,
    pub objects: usize,
    pub morphisms: u128,
    /// `(type, number of objects, |hom(f,g)|)` per connected component.
    pub components: Vec<(Composition, usize, u128)>,
}

/// Counts and composition laws of the groupoid: `Σ|hom(f,g)| = ℓ^d·d!`,
/// `|hom(f,g)| = λ!` exactly when the types agree, closed endomorphism
/// groups and the cocycle law for canonical morphisms (`d ≤ 4`).
pub fn verify_groupoid(ell: usize, d: usize, cap: usize) -> Result<(GroupoidSummary, Report)> {
    let objs = objects(ell, d, cap)?;
    let order = crate::wreath::group_order(ell, d);
    if order > cap as u128 {
        return Err(Error::cap("morphisms", order, cap));
    }
    let mut report = Report::new();
    let mut total: u128 = 0;
    let mut bad_size = None;
    for f in &objs {
        for g in &objs {
            let n = hom(f, g).len() as u128;
            total += n;
            let expected = if f.type_of() == g.type_of() { f.type_of().factorial() } else { 0 };
            if n != expected && bad_size.is_none() {
                bad_size = Some(format!("|hom({f:?},{g:?})| = {n}, expected {expected}"));
            }
        }
    }
    report.push("morphism count", total == order, format!("{total} morphisms, ℓ^d·d! = {order}"));
    report.push("hom sizes", bad_size.is_none(), bad_size.unwrap_or_default());

    let mut bad_endo = None;
    for f in &objs {
        let endo = hom(f, f);
        let closed = endo.iter().all(|a| endo.iter().all(|b| compose(a, b).is_ok_and(|c| endo.contains(&c))));
        if !closed || endo.len() as u128 != f.type_of().factorial() {
            bad_endo = Some(format!("{f:?}"));
            break;
        }
    }
    report.push("endomorphism groups", bad_endo.is_none(), bad_endo.unwrap_or_default());

    if d <= 4 {
        let mut bad = None;
        'outer: for f in &objs {
            let same: Vec<&ColorFn> = objs.iter().filter(|g| g.type_of() == f.type_of()).collect();
            for g in &same {
                for h in &same {
                    let fg = canonical_morphism(f, g)?;
                    let gh = canonical_morphism(g, h)?;
                    if compose(&gh, &fg)? != canonical_morphism(f, h)? {
                        bad = Some(format!("{f:?} → {g:?} → {h:?}"));
                        break 'outer;
                    }
                }
            }
        }
        report.push("canonical cocycle", bad.is_none(), bad.unwrap_or_default());
    }

    let mut components: Vec<(Composition, usize, u128)> = Vec::new();
    for f in &objs {
        let lambda = f.type_of();
        match components.iter_mut().find(|(l, _, _)| *l == lambda) {
            Some(c) => c.1 += 1,
            None => {
                let fact = lambda.factorial();
                components.push((lambda, 1, fact));
            }
        }
    }
    components.sort();
    let summary = GroupoidSummary { ell, d, objects: objs.len(), morphisms: total, components };
    Ok((summary, report))
}

/// The two-color, two-position groupoid: four objects, hom-set sizes
/// `2, 1, 1, 2` on the diagonal components and eight morphisms.
pub fn two_by_two_example() -> Result<Report> {
    let objs = objects(2, 2, 4)?;
    let mut report = Report::new();
    report.push("four objects", objs.len() == 4, format!("{objs:?}"));
    let size = |a: &[usize], b: &[usize]| -> Result<usize> {
        Ok(hom(&ColorFn::new(2, a.to_vec())?, &ColorFn::new(2, b.to_vec())?).len())
    };
    let expected = [
        ([1, 1], [1, 1], 2),
        ([2, 2], [2, 2], 2),
        ([1, 2], [1, 2], 1),
        ([1, 2], [2, 1], 1),
        ([2, 1], [1, 2], 1),
        ([2, 1], [2, 1], 1),
        ([1, 1], [1, 2], 0),
        ([1, 1], [2, 2], 0),
    ];
    for (a, b, n) in expected {
        let got = size(&a, &b)?;
        report.push(format!("|hom({a:?},{b:?})|"), got == n, format!("{got}"));
    }
    let f = ColorFn::new(2, vec![1, 2])?;
    let g = ColorFn::new(2, vec![2, 1])?;
    let swap = &hom(&f, &g)[0];
    report.push("swap is the transposition", swap.perm().one_based() == [2, 1], format!("{swap:?}"));
    let back = compose(&hom(&g, &f)[0], swap)?;
    report.push("swap∘swap = e", back == GMorphism::identity(&f), format!("{back:?}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(ell: usize, v: &[usize]) -> ColorFn {
        ColorFn::new(ell, v.to_vec()).unwrap()
    }

    #[test]
    fn example_one() {
        let objs = objects(2, 2, 100).unwrap();
        assert_eq!(objs.len(), 4);
        assert_eq!(hom(&cf(2, &[1, 1]), &cf(2, &[1, 1])).len(), 2);
        let swap = hom(&cf(2, &[1, 2]), &cf(2, &[2, 1]));
        assert_eq!(swap.len(), 1);
        assert_eq!(swap[0].perm().one_based(), vec![2, 1]);
        assert!(hom(&cf(2, &[1, 1]), &cf(2, &[1, 2])).is_empty());
        assert_eq!(objects(3, 0, 10).unwrap().len(), 1);
        assert!(objects(10, 7, 1000).is_err());
    }

    #[test]
    fn canonical_examples() {
        let lam = Composition::new(vec![2, 1]);
        assert_eq!(canonical_object(&lam).values(), &[1, 1, 2]);
        assert_eq!(canonical_object(&Composition::new(vec![0, 3])).values(), &[2, 2, 2]);
        let m = canonical_morphism(&cf(2, &[1, 1, 2]), &cf(2, &[1, 2, 1])).unwrap();
        assert_eq!(m.perm().one_based(), vec![1, 3, 2]);
        assert_eq!(cf(3, &[3, 1, 3]).type_of().parts(), &[1, 0, 2]);
        assert!(canonical_morphism(&cf(2, &[1, 1]), &cf(2, &[1, 2])).is_err());
    }

    #[test]
    fn composition_rules() {
        let f = cf(2, &[1, 2]);
        let g = cf(2, &[2, 1]);
        let s = hom(&f, &g).remove(0);
        let back = compose(&s.inverse(), &s).unwrap();
        assert!(back.is_identity());
        assert_eq!(compose(&GMorphism::identity(&g), &s).unwrap(), s);
        assert_eq!(compose(&s, &s), Err(Error::NotComposable));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"source":[1,2],"target":[2,1],"perm":[2,1]}"#);
    }

    #[test]
    fn index_round_trip() {
        for (i, f) in objects(3, 3, 100).unwrap().iter().enumerate() {
            assert_eq!(f.index(), i);
            assert_eq!(&ColorFn::from_index(3, 3, i), f);
        }
    }
}
