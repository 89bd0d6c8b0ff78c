//! Nodal curves on the plane and on P1 x P1, with their canonical ring in
//! degrees one and two computed from adjoint forms.

use std::collections::HashSet;

use rand::Rng;

use crate::arith::{Fp, PrimeField};
use crate::error::{Error, Result};
use crate::koszul::MulTable;
use crate::linalg::{dense, quotient_dims, solve_homogeneous};
use crate::models::forms::{Degree, MonomialBasis};
use crate::rng::SeededRng;

/// Retry budget for random draws.
pub const MAX_ATTEMPTS: u64 = 20;

/// A curve `F = 0` of the given degree with ordinary nodes at `nodes`
/// (affine chart coordinates). Both surfaces share the same bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalCurve {
    field: PrimeField,
    seed: u64,
    attempt: u64,
    degree: Degree,
    nodes: Vec<(Fp, Fp)>,
    f: Vec<Fp>,
}

/// Plane model with `d = degree`.
pub type NodalPlaneCurve = NodalCurve;
/// Model of bidegree `(k, b)` on P1 x P1.
pub type BidegNodalCurve = NodalCurve;

impl NodalCurve {
    /// Assembles a curve without any validity checks.
    pub fn from_parts(field: PrimeField, seed: u64, degree: Degree, nodes: Vec<(Fp, Fp)>, f: Vec<Fp>) -> Result<Self> {
        if f.len() != degree.count() {
            return Err(Error::Invariant(format!("expected {} coefficients, got {}", degree.count(), f.len())));
        }
        Ok(NodalCurve {
            field,
            seed,
            attempt: 0,
            degree,
            nodes,
            f,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Index of the successful draw in the retry sequence.
    pub fn attempt(&self) -> u64 {
        self.attempt
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn nodes(&self) -> &[(Fp, Fp)] {
        &self.nodes
    }

    pub fn equation(&self) -> &[Fp] {
        &self.f
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.degree)
    }

    /// Arithmetic genus minus the number of nodes.
    pub fn genus(&self) -> i64 {
        let pa = match self.degree {
            Degree::Plane(d) => (d - 1) * (d - 2) / 2,
            Degree::Bi(a, b) => (a - 1) * (b - 1),
        };
        pa - self.nodes.len() as i64
    }

    /// Degree of the forms cutting out canonical divisors.
    pub fn adjoint_degree(&self) -> Degree {
        match self.degree {
            Degree::Plane(d) => Degree::Plane(d - 3),
            Degree::Bi(a, b) => Degree::Bi(a - 2, b - 2),
        }
    }

    /// Degree of the pencil cut by the rulings with `u` fixed, i.e. the
    /// degree of the equation in the first factor. `None` for plane curves.
    pub fn pencil_degree(&self) -> Option<i64> {
        match self.degree {
            Degree::Bi(a, _) => Some(a),
            Degree::Plane(_) => None,
        }
    }

    /// Whether node `i` is an ordinary double point of `F = 0`.
    pub fn node_is_ordinary(&self, i: usize) -> bool {
        let b = self.basis();
        let pt = self.nodes[i];
        let d = |ds, du| super::forms::dot(&self.f, &b.derivative_row(pt, ds, du));
        if !(d(0, 0).is_zero() && d(1, 0).is_zero() && d(0, 1).is_zero()) {
            return false;
        }
        let (fss, fsu, fuu) = (d(2, 0), d(1, 1), d(0, 2));
        !(fss * fuu - fsu * fsu).is_zero()
    }

    pub fn nodes_ordinary(&self) -> bool {
        let distinct = self.nodes.iter().collect::<HashSet<_>>().len() == self.nodes.len();
        distinct && (0..self.nodes.len()).all(|i| self.node_is_ordinary(i))
    }

    /// Forms of degree `deg` vanishing at every node, without a dimension check.
    pub fn forms_through_nodes(&self, deg: Degree, double: bool) -> Vec<Vec<Fp>> {
        let b = MonomialBasis::new(deg);
        if b.is_empty() {
            return Vec::new();
        }
        if self.nodes.is_empty() {
            return unit_vectors(self.field, b.len());
        }
        solve_homogeneous(&b.conditions(self.field, &self.nodes, double))
    }

    /// Basis of the canonical series: adjoint forms through the nodes.
    pub fn adjoint_basis(&self) -> Result<Vec<Vec<Fp>>> {
        let v = self.forms_through_nodes(self.adjoint_degree(), false);
        if v.len() as i64 != self.genus() {
            return Err(Error::DegenerateInstance(format!(
                "adjoint system has dimension {}, expected genus {}",
                v.len(),
                self.genus()
            )));
        }
        Ok(v)
    }

    /// Degree-two part of the canonical ring: forms of twice the adjoint
    /// degree singular at the nodes, modulo multiples of `F`.
    fn w2_quotient(&self) -> Result<(MonomialBasis, crate::linalg::Quotient<PrimeField>)> {
        let deg2 = self.adjoint_degree().scale(2);
        let target = MonomialBasis::new(deg2);
        let ambient = self.forms_through_nodes(deg2, true);
        let residual = MonomialBasis::new(deg2.sub(self.degree));
        let fb = self.basis();
        let multiples = MonomialBasis::multiples(self.field, (&fb, &self.f), &residual, &target);
        let q = quotient_dims(&self.field, target.len(), &ambient, &multiples)
            .map_err(|_| Error::DegenerateInstance("multiples of F are not singular at the nodes".into()))?;
        let expected = 3 * self.genus() - 3;
        if q.dim() as i64 != expected {
            return Err(Error::DegenerateInstance(format!(
                "degree-two part has dimension {}, expected {expected}",
                q.dim()
            )));
        }
        Ok((target, q))
    }

    /// Multiplication table via products of adjoint forms in the quotient.
    pub fn mul_table_quotient(&self) -> Result<MulTable> {
        let v = self.adjoint_basis()?;
        let (target, q) = self.w2_quotient()?;
        let adj = MonomialBasis::new(self.adjoint_degree());
        let g = v.len();
        let mut err = None;
        let table = MulTable::from_fn(self.field, g, q.dim(), |i, j| {
            let prod = MonomialBasis::multiply(self.field, (&adj, &v[i]), (&adj, &v[j]), &target);
            q.project(&prod).unwrap_or_else(|e| {
                err = Some(e);
                vec![self.field.elem(0); q.dim()]
            })
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }

    /// `n` distinct smooth affine points of the curve, none of them a node,
    /// found on random vertical lines `s = s0`.
    pub fn sample_points(&self, n: usize, rng: &mut SeededRng) -> Result<Vec<(Fp, Fp)>> {
        if n as u64 > self.field.modulus() as u64 / 2 {
            return Err(Error::InsufficientPoints { found: 0, wanted: n });
        }
        let b = self.basis();
        let nodes: HashSet<_> = self.nodes.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(n);
        let mut tried = HashSet::new();
        let p = self.field.modulus() as usize;
        while out.len() < n {
            if tried.len() == p {
                return Err(Error::InsufficientPoints { found: out.len(), wanted: n });
            }
            let s0 = self.field.random(rng);
            if !tried.insert(s0) {
                continue;
            }
            let line = b.restrict_to_line(self.field, &self.f, s0);
            if line.is_zero() {
                continue;
            }
            for u0 in line.roots() {
                let pt = (s0, u0);
                if nodes.contains(&pt) || seen.contains(&pt) {
                    continue;
                }
                let grad = (
                    super::forms::dot(&self.f, &b.derivative_row(pt, 1, 0)),
                    super::forms::dot(&self.f, &b.derivative_row(pt, 0, 1)),
                );
                if grad.0.is_zero() && grad.1.is_zero() {
                    continue;
                }
                seen.insert(pt);
                out.push(pt);
                if out.len() == n {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Multiplication table from values at sampled points: the products of
    /// evaluation vectors span the image of the degree-two forms, and a
    /// product's coordinates are its values at the pivot points.
    pub fn mul_table_eval(&self, n: usize) -> Result<MulTable> {
        let g = self.genus();
        if (n as i64) < 2 * (4 * g - 4) + 1 {
            return Err(Error::InsufficientPoints { found: 0, wanted: (8 * g - 7) as usize });
        }
        let v = self.adjoint_basis()?;
        let mut rng = SeededRng::derived(self.seed, 1_000 + self.attempt);
        let pts = self.sample_points(n, &mut rng)?;
        let adj = MonomialBasis::new(self.adjoint_degree());
        let evals: Vec<Vec<Fp>> = v
            .iter()
            .map(|c| pts.iter().map(|&pt| adj.eval(c, pt)).collect())
            .collect();
        let gu = v.len();
        let mut products = Vec::with_capacity(gu * (gu + 1) / 2);
        for i in 0..gu {
            for j in i..gu {
                products.push(evals[i].iter().zip(&evals[j]).map(|(a, b)| *a * *b).collect::<Vec<_>>());
            }
        }
        let span = dense::rref(&self.field, products.clone(), n);
        if span.rank() as i64 != 3 * g - 3 {
            return Err(Error::DegenerateInstance(format!(
                "products span {} dimensions at {n} points, expected {}",
                span.rank(),
                3 * g - 3
            )));
        }
        let mut idx = 0;
        let mut table = vec![Vec::new(); gu * gu];
        for i in 0..gu {
            for j in i..gu {
                let coords: Vec<Fp> = span.pivots.iter().map(|&c| products[idx][c]).collect();
                table[i * gu + j] = coords.clone();
                table[j * gu + i] = coords;
                idx += 1;
            }
        }
        MulTable::new(self.field, gu, span.rank(), table)
    }

    /// Node, adjoint and degree-two checks, in that order.
    pub fn geometry_checks(&self) -> Vec<(&'static str, bool, String)> {
        let nodes = self.nodes_ordinary();
        let adjoint = self.forms_through_nodes(self.adjoint_degree(), false).len();
        let w2 = self.w2_quotient();
        vec![
            ("nodes_ordinary", nodes, format!("{} nodes", self.nodes.len())),
            (
                "adjoint_dimension",
                adjoint as i64 == self.genus(),
                format!("{adjoint} (genus {})", self.genus()),
            ),
            (
                "w2_dimension",
                w2.is_ok(),
                match w2 {
                    Ok((_, q)) => format!("{}", q.dim()),
                    Err(e) => e.to_string(),
                },
            ),
        ]
    }
}

fn unit_vectors(field: PrimeField, n: usize) -> Vec<Vec<Fp>> {
    (0..n)
        .map(|i| {
            let mut v = vec![field.elem(0); n];
            v[i] = field.elem(1);
            v
        })
        .collect()
}

fn check_prime(field: PrimeField) -> Result<()> {
    if field.modulus() < 1000 {
        return Err(Error::Usage(format!("prime {} is below 1000", field.modulus())));
    }
    Ok(())
}

/// Random distinct nodes, `F` a random solution of the double-point
/// conditions. Draws are retried until every geometric check passes.
fn fit_nodal(field: PrimeField, degree: Degree, delta: usize, seed: u64) -> Result<NodalCurve> {
    check_prime(field)?;
    let basis = MonomialBasis::new(degree);
    if delta + 1 > basis.len() {
        return Err(Error::Usage(format!("{delta} nodes exceed the {} forms of degree {degree:?}", basis.len())));
    }
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = SeededRng::derived(seed, attempt);
        let mut nodes = Vec::with_capacity(delta);
        while nodes.len() < delta {
            let pt = random_point(field, &mut rng);
            if !nodes.contains(&pt) {
                nodes.push(pt);
            }
        }
        let sols = solve_homogeneous(&basis.conditions(field, &nodes, true));
        if sols.is_empty() {
            last = "no form is singular at the nodes".into();
            continue;
        }
        let mut f = vec![field.elem(0); basis.len()];
        for s in &sols {
            let c = field.random(&mut rng);
            for (x, y) in f.iter_mut().zip(s) {
                *x += c * *y;
            }
        }
        let curve = NodalCurve {
            field,
            seed,
            attempt,
            degree,
            nodes,
            f,
        };
        match curve.geometry_checks().into_iter().find(|c| !c.1) {
            None => return Ok(curve),
            Some((name, _, detail)) => last = format!("{name}: {detail}"),
        }
    }
    Err(Error::DegenerateInstance(format!(
        "no valid draw in {MAX_ATTEMPTS} attempts (last failure {last})"
    )))
}

/// Plane curve of degree `d` with `delta` random nodes.
pub fn fit_nodal_plane(d: i64, delta: usize, field: PrimeField, seed: u64) -> Result<NodalPlaneCurve> {
    if d < 4 {
        return Err(Error::Usage(format!("plane degree {d} has no canonical model")));
    }
    fit_nodal(field, Degree::Plane(d), delta, seed)
}

/// Genus `2k - 1` curve on P1 x P1 with a degree-`k` pencil.
pub fn fit_nodal_bideg(k: usize, field: PrimeField, seed: u64) -> Result<BidegNodalCurve> {
    if k < 3 {
        return Err(Error::Usage(format!("gonality {k} is below 3")));
    }
    let (b, delta) = gonal_bidegree(k);
    fit_nodal(field, Degree::Bi(k as i64, b), delta, seed)
}

/// Second bidegree entry and node count for the gonality-`k` family.
///
/// Bidegree `(k, 4)` would also carry a pencil of degree 4, so for `k >= 4`
/// those curves are not general `k`-gonal and show extra syzygies from both
/// pencils. Bidegree `(k, k + 1)` with `k^2 - 3k + 1` nodes has genus `2k - 1`
/// and its other pencil has degree `k + 1`, the generic gonality.
pub fn gonal_bidegree(k: usize) -> (i64, usize) {
    ((k + 1) as i64, k * k - 3 * k + 1)
}

/// Plane model parameters `(d, delta)` for genus `2k - 1` and gonality at most `k + 1`.
pub fn maxcliff_parameters(k: usize) -> (i64, usize) {
    ((k + 3) as i64, (k * k - k + 4) / 2)
}

fn random_point(field: PrimeField, rng: &mut impl Rng) -> (Fp, Fp) {
    (field.random(rng), field.random(rng))
}
