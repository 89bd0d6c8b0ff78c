//! Explicit multiplication tables: nodal plane curves, nodal curves on
//! P1 x P1, balanced scrolls and complete-intersection canonical curves.

pub mod fixtures;
pub mod forms;
pub mod nodal;

use serde::{Deserialize, Serialize};

use crate::arith::{Fp, PrimeField};
use crate::error::{Error, Result};
use crate::koszul::MulTable;

pub use fixtures::{ci_mul_table, scroll_mul_table, CIFixture, ScrollModel};
pub use forms::{Degree, MonomialBasis};
pub use nodal::{
    fit_nodal_bideg, fit_nodal_plane, gonal_bidegree, maxcliff_parameters, BidegNodalCurve, NodalCurve, NodalPlaneCurve,
};

/// Version tag of [`ModelDocument`].
pub const MODEL_SCHEMA: &str = "syzlab-model/1";

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Nodal(NodalCurve),
    Scroll(ScrollModel),
    CompleteIntersection(CIFixture),
}

impl Model {
    /// Number of sections of the embedding line bundle.
    pub fn h0l(&self) -> usize {
        match self {
            Model::Nodal(c) => c.genus().max(0) as usize,
            Model::Scroll(s) => 2 * s.k() - 1,
            Model::CompleteIntersection(c) => c.genus(),
        }
    }

    /// Multiplication table; nodal curves use the quotient route.
    pub fn mul_table(&self) -> Result<MulTable> {
        match self {
            Model::Nodal(c) => c.mul_table_quotient(),
            Model::Scroll(s) => s.mul_table(),
            Model::CompleteIntersection(c) => c.mul_table(),
        }
    }

    pub fn document(&self) -> ModelDocument {
        let spec = match self {
            Model::Nodal(c) => {
                let exps = MonomialBasis::new(c.degree());
                let monomials = (0..exps.len()).map(|i| exps.exponent(i).to_vec()).collect();
                let (surface, degree) = match c.degree() {
                    Degree::Plane(d) => ("plane", vec![d]),
                    Degree::Bi(a, b) => ("p1xp1", vec![a, b]),
                };
                ModelSpec::Nodal {
                    prime: c.field().modulus() as u64,
                    seed: c.seed(),
                    attempt: c.attempt(),
                    surface: surface.into(),
                    degree,
                    genus: c.genus(),
                    nodes: c.nodes().iter().map(|(s, u)| [s.value(), u.value()]).collect(),
                    monomials,
                    equation: values(c.equation()),
                }
            }
            Model::Scroll(s) => ModelSpec::Scroll { k: s.k() },
            Model::CompleteIntersection(c) => ModelSpec::CompleteIntersection {
                prime: c.field().modulus() as u64,
                seed: c.seed(),
                genus: c.genus(),
                quadrics: c.quadrics().iter().map(|q| values(q)).collect(),
                cubic: c.cubic().map(values),
            },
        };
        ModelDocument {
            schema: MODEL_SCHEMA.into(),
            model: spec,
        }
    }

    /// Rebuilds a model from its document.
    pub fn from_document(doc: &ModelDocument) -> Result<Model> {
        if doc.schema != MODEL_SCHEMA {
            return Err(Error::Usage(format!("unknown model schema {}", doc.schema)));
        }
        match &doc.model {
            ModelSpec::Nodal {
                prime,
                seed,
                surface,
                degree,
                nodes,
                equation,
                ..
            } => {
                let field = PrimeField::new(*prime)?;
                let deg = match (surface.as_str(), degree.as_slice()) {
                    ("plane", [d]) => Degree::Plane(*d),
                    ("p1xp1", [a, b]) => Degree::Bi(*a, *b),
                    _ => return Err(Error::Usage(format!("bad surface {surface} with degree {degree:?}"))),
                };
                let nodes = nodes
                    .iter()
                    .map(|[s, u]| (field.elem(*s as i64), field.elem(*u as i64)))
                    .collect();
                let f = equation.iter().map(|&x| field.elem(x as i64)).collect();
                Ok(Model::Nodal(NodalCurve::from_parts(field, *seed, deg, nodes, f)?))
            }
            ModelSpec::Scroll { k } => Ok(Model::Scroll(ScrollModel::new(*k)?)),
            ModelSpec::CompleteIntersection {
                prime,
                seed,
                genus,
                quadrics,
                cubic,
            } => {
                let field = PrimeField::new(*prime)?;
                let conv = |v: &Vec<u32>| v.iter().map(|&x| field.elem(x as i64)).collect::<Vec<_>>();
                Ok(Model::CompleteIntersection(CIFixture::from_parts(
                    field,
                    *seed,
                    *genus,
                    quadrics.iter().map(conv).collect(),
                    cubic.as_ref().map(conv),
                )?))
            }
        }
    }
}

fn values(v: &[Fp]) -> Vec<u32> {
    v.iter().map(|x| x.value()).collect()
}

/// Versioned, replayable description of a model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub schema: String,
    pub model: ModelSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Nodes and equation in the affine chart; `monomials` lists the
    /// exponent vector of each equation coefficient.
    Nodal {
        prime: u64,
        seed: u64,
        attempt: u64,
        surface: String,
        degree: Vec<i64>,
        genus: i64,
        nodes: Vec<[u32; 2]>,
        monomials: Vec<Vec<u32>>,
        equation: Vec<u32>,
    },
    Scroll {
        k: usize,
    },
    CompleteIntersection {
        prime: u64,
        seed: u64,
        genus: usize,
        quadrics: Vec<Vec<u32>>,
        cubic: Option<Vec<u32>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheckReport {
    pub checks: Vec<Check>,
}

impl SelfCheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every structural check; failures are reported, not raised.
pub fn model_selfcheck(model: &Model) -> SelfCheckReport {
    let mut checks = Vec::new();
    if let Model::Nodal(c) = model {
        for (name, pass, detail) in c.geometry_checks() {
            checks.push(Check::new(name, pass, detail));
        }
    }
    match model.mul_table() {
        Ok(t) => {
            let expected_w2 = match model {
                Model::Scroll(s) => {
                    let k = s.k();
                    3 * (k - 2) * (k - 1) / 2 + 4 * (k - 2) + 5
                }
                _ => 3 * model.h0l() - 3,
            };
            checks.push(Check::new(
                "h0_dimensions",
                t.h0l() == model.h0l() && t.h0l2() == expected_w2,
                format!("({}, {})", t.h0l(), t.h0l2()),
            ));
            checks.push(Check::new("mu_symmetric", t.is_symmetric(), ""));
            checks.push(Check::new("mu_surjective", t.is_surjective(), ""));
        }
        Err(e) => checks.push(Check::new("mul_table", false, e.to_string())),
    }
    SelfCheckReport { checks }
}
