use serde::{Deserialize, Serialize};

use super::injection::Injection;
use crate::combinat::falling_factorial;
use crate::error::{Error, Result};
use crate::linalg::{RingSpec, Scalar};

/// Generator degrees `d_1, …, d_k` of a free FI-module `⊕ M(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeSpec {
    pub degrees: Vec<usize>,
}

impl FreeSpec {
    pub fn new(degrees: Vec<usize>) -> Self {
        FreeSpec { degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Rank of `(⊕ M(d_i))_n`.
    pub fn rank_at(&self, n: usize) -> usize {
        self.degrees.iter().map(|&d| falling_factorial(n, d)).sum()
    }

    /// Start of each generator's block in the degree-`n` basis.
    pub fn offsets(&self, n: usize) -> Vec<usize> {
        let mut acc = 0;
        self.degrees
            .iter()
            .map(|&d| {
                let o = acc;
                acc += falling_factorial(n, d);
                o
            })
            .collect()
    }
}

/// One basis element `(i, g)` of `(⊕ M(d_i))_n` with a coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub generator: usize,
    pub injection: Injection,
    pub coeff: Scalar,
}

/// An element of `(⊕ M(d_i))_n`. Terms are sorted by `(generator, image
/// tuple)`, merged, and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElement {
    degree: usize,
    ring: RingSpec,
    terms: Vec<Term>,
}

impl FreeElement {
    pub fn zero(ring: RingSpec, degree: usize) -> Self {
        FreeElement {
            degree,
            ring,
            terms: Vec::new(),
        }
    }

    pub fn new(ring: RingSpec, degree: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.injection.target() != degree {
                return Err(Error::InvalidPresentation(format!(
                    "term injection {} does not land in [{degree}]",
                    t.injection
                )));
            }
            if t.coeff.ring() != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: t.coeff.ring(),
                });
            }
        }
        Ok(Self::normalized(ring, degree, terms))
    }

    /// Basis element `(generator, injection)` with coefficient 1.
    pub fn basis(ring: RingSpec, generator: usize, injection: Injection) -> Self {
        FreeElement {
            degree: injection.target(),
            ring,
            terms: vec![Term {
                generator,
                injection,
                coeff: ring.one(),
            }],
        }
    }

    fn normalized(ring: RingSpec, degree: usize, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| (a.generator, &a.injection).cmp(&(b.generator, &b.injection)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.generator == t.generator && last.injection == t.injection => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coeff.is_zero()) {
                out.pop();
            }
        }
        FreeElement {
            degree,
            ring,
            terms: out,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Checks generator indices and injection source sizes against `spec`.
    pub fn validate(&self, spec: &FreeSpec) -> Result<()> {
        for t in &self.terms {
            let Some(&d) = spec.degrees.get(t.generator) else {
                return Err(Error::InvalidPresentation(format!("generator index {} out of range", t.generator)));
            };
            if t.injection.source() != d {
                return Err(Error::InvalidPresentation(format!(
                    "generator {} has degree {d} but its injection has source size {}",
                    t.generator,
                    t.injection.source()
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &FreeElement) -> Result<FreeElement> {
        if self.degree != other.degree || self.ring != other.ring {
            return Err(Error::SizeMismatch("adding elements of different degrees or rings".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self::normalized(self.ring, self.degree, terms))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                generator: t.generator,
                injection: t.injection.clone(),
                coeff: &t.coeff * c,
            })
            .collect();
        Self::normalized(self.ring, self.degree, terms)
    }

    pub fn convert(&self, ring: RingSpec) -> Result<FreeElement> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    generator: t.generator,
                    injection: t.injection.clone(),
                    coeff: t.coeff.convert(ring)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(ring, self.degree, terms))
    }
}

/// `f_*(e)`: each term `(i, g, c)` becomes `(i, f ∘ g, c)`.
pub fn pushforward(e: &FreeElement, f: &Injection) -> Result<FreeElement> {
    if f.source() != e.degree {
        return Err(Error::SizeMismatch(format!(
            "element of degree {} pushed along an injection from [{}]",
            e.degree,
            f.source()
        )));
    }
    let terms = e
        .terms
        .iter()
        .map(|t| Term {
            generator: t.generator,
            injection: Injection::new_unchecked(f.compose_images(t.injection.images()), f.target()),
            coeff: t.coeff.clone(),
        })
        .collect();
    Ok(FreeElement::normalized(e.ring, f.target(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushforward_examples() {
        let q = RingSpec::Rational;
        let x = FreeElement::basis(q, 0, Injection::identity(1));
        let f = Injection::new(vec![2], 3).unwrap();
        let y = pushforward(&x, &f).unwrap();
        assert_eq!(y.terms().len(), 1);
        assert_eq!(y.terms()[0].injection.images(), &[2]);
        assert_eq!(pushforward(&y, &Injection::identity(3)).unwrap(), y);
        assert!(pushforward(&y, &f).is_err());
    }

    #[test]
    fn terms_merge_and_cancel() {
        let z = RingSpec::Integer;
        let g = Injection::new(vec![1], 2).unwrap();
        let t = |c: i64| Term {
            generator: 0,
            injection: g.clone(),
            coeff: z.from_i64(c),
        };
        let e = FreeElement::new(z, 2, vec![t(2), t(-2)]).unwrap();
        assert!(e.is_zero());
    }
}
