use serde::Serialize;

use super::shift::shift_presentation;
use super::x_map;
use crate::error::Result;
use crate::fi::{evaluate_slice, FIPresentation, FreeElement, Injection};
use crate::linalg::{Column, Invariants, PresentedModule, Span};

/// Kernels of `X_a: V_n → V_{n+a}` for `a = 1..=a_max`.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub n: usize,
    pub a_max: usize,
    /// `kernels[a - 1]` is `ker X_a`.
    pub kernels: Vec<Invariants>,
    pub ascending: bool,
    /// The last three kernels coincide as submodules of `V_n`.
    pub stabilized: bool,
}

impl TorsionReport {
    /// The largest kernel found; equal to `T(V)_n` only when stabilized.
    pub fn union_so_far(&self) -> Option<&Invariants> {
        self.kernels.last()
    }
}

/// Span of `relations + generators` inside the ambient of `module`.
fn submodule(module: &PresentedModule, generators: &[Column]) -> Span {
    let mut s = module.relation_span().clone();
    for g in generators {
        s.insert(g);
    }
    s
}

pub fn torsion_slice(p: &FIPresentation, n: usize, a_max: usize) -> Result<TorsionReport> {
    let v = evaluate_slice(p, n);
    let mut kernels = Vec::with_capacity(a_max);
    let mut spans = Vec::with_capacity(a_max);
    for a in 1..=a_max {
        let k = x_map(p, a, n)?.kernel()?;
        spans.push(submodule(v.module(), &k.generators));
        kernels.push(k.invariants);
    }
    let ascending = spans.windows(2).all(|w| w[1].contains_span(&w[0]));
    let stabilized = spans.len() >= 3 && spans[spans.len() - 3..].windows(2).all(|w| w[0] == w[1]);
    Ok(TorsionReport {
        n,
        a_max,
        kernels,
        ascending,
        stabilized,
    })
}

/// `DV = coker(X_1: V → S_{+1}V)`: the shifted presentation with the `T = ∅`
/// copy of every original generator killed.
pub fn derivative(p: &FIPresentation) -> FIPresentation {
    let shift = shift_presentation(p, 1);
    let mut relations = shift.presentation.relations().to_vec();
    for (i, &d) in p.degrees().iter().enumerate() {
        relations.push(FreeElement::basis(p.ring(), shift.trivial_generator(i), Injection::identity(d)));
    }
    shift.presentation.with_relations(relations).expect("valid derivative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RingSpec;

    #[test]
    fn torsion_examples() {
        let q = RingSpec::Rational;
        let t = FIPresentation::point_torsion(q);
        let r = torsion_slice(&t, 0, 3).unwrap();
        assert_eq!(r.kernels[0], Invariants::Field { dim: 1 });
        assert!(r.stabilized);
        assert_eq!(torsion_slice(&t, 2, 3).unwrap().kernels[2], Invariants::Field { dim: 0 });
        let f = FIPresentation::free(RingSpec::Integer, vec![2]);
        assert!(torsion_slice(&f, 3, 3).unwrap().kernels.iter().all(Invariants::is_zero));
    }

    #[test]
    fn derivative_examples() {
        let q = RingSpec::Rational;
        let d1 = derivative(&FIPresentation::free(q, vec![1]));
        for n in 0..5 {
            assert_eq!(evaluate_slice(&d1, n).rank(), 1);
        }
        let d0 = derivative(&FIPresentation::free(q, vec![0]));
        assert!((0..5).all(|n| evaluate_slice(&d0, n).rank() == 0));
        let d2 = derivative(&FIPresentation::free(q, vec![2]));
        for n in 0..6 {
            assert_eq!(evaluate_slice(&d2, n).rank(), 2 * n);
        }
    }
}
