use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use super::element::{FreeElement, FreeSpec, Term};
use super::injection::Injection;
use crate::error::{Error, Result};
use crate::linalg::RingSpec;

/// A finitely presented FI-module `coker(⊕_j M(e_j) → ⊕_i M(d_i))`: generator
/// degrees `d_i` and relations `r_j ∈ (⊕ M(d_i))_{e_j}`.
#[derive(Clone, Debug)]
pub struct FIPresentation {
    ring: RingSpec,
    generators: FreeSpec,
    relations: Vec<FreeElement>,
    hash: OnceLock<String>,
}

impl PartialEq for FIPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators && self.relations == other.relations
    }
}

impl Eq for FIPresentation {}

impl FIPresentation {
    pub fn new(ring: RingSpec, generators: Vec<usize>, relations: Vec<FreeElement>) -> Result<Self> {
        let generators = FreeSpec::new(generators);
        for r in &relations {
            if r.ring() != ring {
                return Err(Error::RingMismatch {
                    expected: ring,
                    found: r.ring(),
                });
            }
            r.validate(&generators)?;
        }
        Ok(FIPresentation {
            ring,
            generators,
            relations,
            hash: OnceLock::new(),
        })
    }

    /// The free module `⊕ M(d_i)`.
    pub fn free(ring: RingSpec, degrees: Vec<usize>) -> Self {
        FIPresentation {
            ring,
            generators: FreeSpec::new(degrees),
            relations: Vec::new(),
            hash: OnceLock::new(),
        }
    }

    /// `coker(M(1) → M(0))`, sending the generator of `M(1)` to the image of
    /// the generator of `M(0)`: `R` in degree 0 and zero above.
    pub fn point_torsion(ring: RingSpec) -> Self {
        let rel = FreeElement::basis(ring, 0, Injection::new_unchecked(Vec::new(), 1));
        FIPresentation::new(ring, vec![0], vec![rel]).expect("valid")
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generators(&self) -> &FreeSpec {
        &self.generators
    }

    pub fn degrees(&self) -> &[usize] {
        &self.generators.degrees
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn max_generator_degree(&self) -> Option<usize> {
        self.generators.degrees.iter().copied().max()
    }

    pub fn max_relation_degree(&self) -> Option<usize> {
        self.relations.iter().map(FreeElement::degree).max()
    }

    /// The same presentation with coefficients reinterpreted in `ring`.
    pub fn change_ring(&self, ring: RingSpec) -> Result<Self> {
        let relations = self.relations.iter().map(|r| r.convert(ring)).collect::<Result<Vec<_>>>()?;
        FIPresentation::new(ring, self.generators.degrees.clone(), relations)
    }

    /// The same presentation with its relations listed in another order.
    pub fn with_relations(&self, relations: Vec<FreeElement>) -> Result<Self> {
        FIPresentation::new(self.ring, self.generators.degrees.clone(), relations)
    }

    fn document(&self) -> Doc {
        Doc {
            ring: match self.ring {
                RingSpec::Rational => RawRing::Q,
                RingSpec::Integer => RawRing::Z,
                RingSpec::Prime(p) => RawRing::Fp(p),
            },
            generators: self.generators.degrees.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| DocRelation {
                    degree: r.degree(),
                    terms: r
                        .terms()
                        .iter()
                        .map(|t| DocTerm {
                            gen: t.generator,
                            injection: t.injection.images().to_vec(),
                            coeff: t.coeff.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Human-readable document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document()).expect("serializable")
    }

    /// Compact document with terms in canonical order; the hashed form.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.document()).expect("serializable")
    }

    /// SHA-256 of the canonical document, hex encoded.
    pub fn content_hash(&self) -> &str {
        self.hash.get_or_init(|| hex::encode(Sha256::digest(self.to_canonical_json().as_bytes())))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RawDoc = serde_json::from_str(text).map_err(|e| json_error(&e, (1, 1)))?;
        let ring = match doc.ring {
            RawRing::Q => RingSpec::Rational,
            RawRing::Z => RingSpec::Integer,
            RawRing::Fp(p) => RingSpec::prime_field(p).map_err(|e| Error::Parse {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?,
        };
        let generators = FreeSpec::new(doc.generators);
        let mut relations = Vec::with_capacity(doc.relations.len());
        for raw in doc.relations {
            let at = position(text, raw);
            let rel: RawRelation = serde_json::from_str(raw.get()).map_err(|e| json_error(&e, at))?;
            let mut terms = Vec::with_capacity(rel.terms.len());
            for raw_term in rel.terms {
                let at = position(text, raw_term);
                let fail = |message: String| Error::Parse {
                    line: at.0,
                    column: at.1,
                    message,
                };
                let t: RawTerm = serde_json::from_str(raw_term.get()).map_err(|e| json_error(&e, at))?;
                let Some(&d) = generators.degrees.get(t.gen) else {
                    return Err(fail(format!("generator index {} out of range", t.gen)));
                };
                if t.injection.len() != d {
                    return Err(fail(format!(
                        "generator {} has degree {d}, injection has {} images",
                        t.gen,
                        t.injection.len()
                    )));
                }
                let injection = Injection::new(t.injection, rel.degree).map_err(|e| fail(e.to_string()))?;
                let coeff = ring.parse_scalar(&t.coeff).map_err(|e| fail(e.to_string()))?;
                terms.push(Term {
                    generator: t.gen,
                    injection,
                    coeff,
                });
            }
            relations.push(FreeElement::new(ring, rel.degree, terms).map_err(|e| Error::Parse {
                line: at.0,
                column: at.1,
                message: e.to_string(),
            })?);
        }
        FIPresentation::new(ring, generators.degrees, relations)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
enum RawRing {
    Q,
    Z,
    Fp(u64),
}

#[derive(Serialize)]
struct Doc {
    ring: RawRing,
    generators: Vec<usize>,
    relations: Vec<DocRelation>,
}

#[derive(Serialize)]
struct DocRelation {
    degree: usize,
    terms: Vec<DocTerm>,
}

#[derive(Serialize)]
struct DocTerm {
    gen: usize,
    injection: Vec<usize>,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc<'a> {
    ring: RawRing,
    generators: Vec<usize>,
    #[serde(borrow, default)]
    relations: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation<'a> {
    degree: usize,
    #[serde(borrow)]
    terms: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    gen: usize,
    injection: Vec<usize>,
    coeff: String,
}

/// 1-based line and column of a borrowed fragment inside `text`.
fn position(text: &str, fragment: &RawValue) -> (usize, usize) {
    let offset = fragment.get().as_ptr() as usize - text.as_ptr() as usize;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn json_error(e: &serde_json::Error, base: (usize, usize)) -> Error {
    let (line, column) = if e.line() <= 1 {
        (base.0, base.1 + e.column().saturating_sub(1))
    } else {
        (base.0 + e.line() - 1, e.column())
    };
    Error::Parse {
        line,
        column,
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    }
}
