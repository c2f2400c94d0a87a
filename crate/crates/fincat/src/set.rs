//! Finite sets with labelled elements, and total functions between them
//! tabulated element-by-element.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::search::{cartesian_indices, permutations};

/// A finite set: an ordered list of distinct element labels. Empty sets are
/// first-class values. Cloning is cheap (the labels are shared).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elements: Arc<Vec<String>>,
}

impl FinSet {
    pub fn new(elements: Vec<String>) -> Result<FinSet> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::Mismatch(format!("duplicate element label `{e}`")));
            }
        }
        Ok(FinSet {
            elements: Arc::new(elements),
        })
    }

    pub fn from_labels(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().map(|s| s.to_string()).collect())
            .expect("labels must be distinct")
    }

    pub fn empty() -> FinSet {
        FinSet {
            elements: Arc::new(vec![]),
        }
    }

    pub fn singleton(label: &str) -> FinSet {
        FinSet {
            elements: Arc::new(vec![label.to_string()]),
        }
    }

    /// `{prefix}0, .., {prefix}{n-1}`.
    pub fn canonical(n: usize, prefix: &str) -> FinSet {
        FinSet {
            elements: Arc::new((0..n).map(|i| format!("{prefix}{i}")).collect()),
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

/// A total function between finite sets, stored as the image index of each
/// domain element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetFn {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl SetFn {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<SetFn> {
        if map.len() != dom.size() {
            return Err(Error::Mismatch(format!(
                "function table has {} entries for a domain of size {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&i| i >= cod.size()) {
            return Err(Error::Mismatch(format!(
                "function image index {bad} out of range for codomain of size {}",
                cod.size()
            )));
        }
        Ok(SetFn { dom, cod, map })
    }

    /// Builds the table by evaluating `f` on each domain index.
    pub fn tabulate(dom: FinSet, cod: FinSet, f: impl Fn(usize) -> usize) -> SetFn {
        let map = (0..dom.size()).map(&f).collect::<Vec<_>>();
        SetFn::new(dom, cod, map).expect("tabulated image out of range")
    }

    pub fn identity(s: &FinSet) -> SetFn {
        SetFn {
            dom: s.clone(),
            cod: s.clone(),
            map: (0..s.size()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `g∘f`. Panics when `f.cod != g.dom`; callers compose only
    /// structurally matching functions.
    pub fn compose(g: &SetFn, f: &SetFn) -> SetFn {
        assert_eq!(
            f.cod, g.dom,
            "compose called on functions with mismatched middle set"
        );
        SetFn {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            map: f.map.iter().map(|&i| g.map[i]).collect(),
        }
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom.size() != self.cod.size() {
            return false;
        }
        let mut hit = vec![false; self.cod.size()];
        for &i in &self.map {
            if hit[i] {
                return false;
            }
            hit[i] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<SetFn> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.dom.size()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Some(SetFn {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }
}

/// All functions `dom -> cod` in lexicographic order of their tables.
/// An empty domain yields exactly the empty function, even into the empty set.
pub fn all_functions(dom: &FinSet, cod: &FinSet) -> Vec<SetFn> {
    cartesian_indices(&vec![cod.size(); dom.size()])
        .map(|map| SetFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
        .collect()
}

/// `|cod|^|dom|` as a float (for guard estimates).
pub fn function_count(dom: &FinSet, cod: &FinSet) -> f64 {
    (cod.size() as f64).powi(dom.size() as i32)
}

/// All bijections `dom -> cod`, in lexicographic order; empty unless the
/// sizes agree.
pub fn all_bijections(dom: &FinSet, cod: &FinSet) -> Vec<SetFn> {
    if dom.size() != cod.size() {
        return Vec::new();
    }
    permutations(dom.size())
        .into_iter()
        .map(|map| SetFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
        .collect()
}

/// `|dom|!` when the sizes agree, else 0 (for guard estimates).
pub fn bijection_count(dom: &FinSet, cod: &FinSet) -> f64 {
    if dom.size() != cod.size() {
        return 0.0;
    }
    (1..=dom.size()).map(|i| i as f64).product()
}

/// Canonical tuple label `(l0,l1,..)` used for limit families and
/// function-elements.
pub fn tuple_label<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let mut s = String::from("(");
    for (i, p) in parts.enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p);
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSet::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn compose_and_identity() {
        let a = FinSet::from_labels(&["x", "y"]);
        let b = FinSet::from_labels(&["u", "v", "w"]);
        let f = SetFn::new(a.clone(), b.clone(), vec![2, 0]).unwrap();
        let idt = SetFn::identity(&b);
        assert_eq!(SetFn::compose(&idt, &f), f);
        assert_eq!(SetFn::compose(&f, &SetFn::identity(&a)), f);
    }

    #[test]
    fn function_enumeration_counts() {
        let two = FinSet::canonical(2, "x");
        let three = FinSet::canonical(3, "y");
        assert_eq!(all_functions(&two, &three).len(), 9);
        assert_eq!(all_functions(&FinSet::empty(), &three).len(), 1);
        assert_eq!(all_functions(&FinSet::empty(), &FinSet::empty()).len(), 1);
        assert_eq!(all_functions(&two, &FinSet::empty()).len(), 0);
        assert_eq!(all_bijections(&two, &two).len(), 2);
        assert_eq!(all_bijections(&two, &three).len(), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let a = FinSet::from_labels(&["x", "y", "z"]);
        let f = SetFn::new(a.clone(), a.clone(), vec![2, 0, 1]).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(SetFn::compose(&g, &f), SetFn::identity(&a));
        assert_eq!(SetFn::compose(&f, &g), SetFn::identity(&a));
        let not_bij = SetFn::new(a.clone(), a.clone(), vec![0, 0, 1]).unwrap();
        assert!(not_bij.inverse().is_none());
    }

    #[test]
    fn tuple_labels() {
        assert_eq!(tuple_label(["a", "b"].into_iter()), "(a,b)");
        assert_eq!(tuple_label(std::iter::empty()), "()");
    }
}
