//! Conjugacy classes by orbit partitioning and exact class functions.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{CycField, CycNum, Rational, Scalar};
use crate::wreath::WreathElem;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Class {
    /// Position of the representative in [`ConjugacyClasses::elements`].
    pub rep: usize,
    pub members: Vec<usize>,
}

/// Conjugacy classes of the finite group generated by `gens`, whose
/// elements are `elems`.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    elems: Vec<WreathElem>,
    position: BTreeMap<WreathElem, usize>,
    class_of: Vec<usize>,
    classes: Vec<Class>,
}

impl ConjugacyClasses {
    /// `gens` must generate the group `elems`; each class is the orbit of its
    /// first element (in `elems` order) under conjugation by `gens`.
    pub fn new(elems: Vec<WreathElem>, gens: &[WreathElem]) -> Self {
        let position: BTreeMap<WreathElem, usize> =
            elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut class_of = vec![usize::MAX; elems.len()];
        let mut classes = Vec::new();
        for start in 0..elems.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in gens {
                    let j = position[&elems[i].conjugate_by(g)];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(Class { rep: start, members });
        }
        ConjugacyClasses { elems, position, class_of, classes }
    }

    pub fn elements(&self) -> &[WreathElem] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, c: usize) -> &WreathElem {
        &self.elems[self.classes[c].rep]
    }

    pub fn position(&self, x: &WreathElem) -> Option<usize> {
        self.position.get(x).copied()
    }

    /// Class index of `x`, if `x` is in the group.
    pub fn class_of(&self, x: &WreathElem) -> Option<usize> {
        self.position(x).map(|i| self.class_of[i])
    }
}

/// Values of a class function, indexed by class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn at(&self, classes: &ConjugacyClasses, x: &WreathElem) -> Option<&CycNum> {
        classes.class_of(x).map(|c| &self.values[c])
    }

    pub fn add(&self, rhs: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a.plus(b)).collect() }
    }
}

/// Builds a class function from `value(x)` evaluated on representatives,
/// and verifies constancy on up to `samples` further members per class.
pub fn class_function(
    classes: &ConjugacyClasses,
    samples: usize,
    mut value: impl FnMut(&WreathElem) -> CycNum,
) -> Result<ClassFunction> {
    let mut values = Vec::with_capacity(classes.len());
    for class in classes.classes() {
        let v = value(&classes.elems[class.rep]);
        let stride = (class.members.len() / (samples + 1)).max(1);
        for &m in class.members.iter().skip(stride).step_by(stride).take(samples) {
            if value(&classes.elems[m]) != v {
                return Err(Error::Internal(alloc::format!(
                    "value differs between conjugates {:?} and {:?}",
                    classes.elems[class.rep],
                    classes.elems[m]
                )));
            }
        }
        values.push(v);
    }
    Ok(ClassFunction { values })
}

/// `⟨a, b⟩ = (1/|G|) Σ_x a(x)·conj(b(x))`.
pub fn inner_product(classes: &ConjugacyClasses, field: &CycField, a: &ClassFunction, b: &ClassFunction) -> CycNum {
    let mut acc = field.zero();
    for (c, class) in classes.classes().iter().enumerate() {
        let size = field.from_int(class.members.len() as i64);
        acc = acc.plus(&size.times(&a.values[c]).times(&b.values[c].conj()));
    }
    let order = field.from_rational(Rational::from_int(classes.order() as i64));
    acc.times(&order.inverse().expect("nonempty group"))
}

/// A nonnegative integer, if `x` is one.
pub fn as_multiplicity(x: &CycNum) -> Option<u64> {
    let r = x.as_rational()?;
    if r.is_integer() && !r.is_negative() {
        r.to_i64().map(|v| v as u64)
    } else {
        None
    }
}
