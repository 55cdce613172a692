//! Root systems of the supported reflection groups and the reflection action.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_type::GroupType;
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::Scalar;

/// Which field the coordinates are allowed to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Arithmetic {
    /// Exact whenever a quadratic field suffices, floats otherwise.
    #[default]
    Auto,
    /// Exact or an error.
    Exact,
    /// Floats throughout, compared with [`crate::scalar::FLOAT_TOLERANCE`].
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisTag {
    AmbientOrthonormal,
    SimpleRootBasis,
}

/// The ambient Euclidean space `V` in a chosen coordinate basis.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSpaceContext {
    pub dim: usize,
    /// Gram matrix of the coordinate basis; `None` means orthonormal.
    pub form: Option<Matrix>,
    pub basis: BasisTag,
}

impl VectorSpaceContext {
    pub fn euclidean(dim: usize) -> Self {
        VectorSpaceContext {
            dim,
            form: None,
            basis: BasisTag::AmbientOrthonormal,
        }
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> Scalar {
        match &self.form {
            None => u.dot(v),
            Some(g) => {
                let mut acc = Scalar::zero();
                for (i, ui) in u.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    for (j, vj) in v.iter().enumerate() {
                        if !g[i][j].is_zero() && !vj.is_zero() {
                            acc = acc + ui * &(&g[i][j] * vj);
                        }
                    }
                }
                acc
            }
        }
    }

    pub fn gram_matrix(&self) -> Matrix {
        self.form.clone().unwrap_or_else(|| {
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
                .collect()
        })
    }

    /// Exact positive definiteness of the form.
    pub fn is_valid(&self) -> bool {
        self.form.as_ref().is_none_or(linalg::is_positive_definite)
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// `v − 2(⟨v,α⟩/⟨α,α⟩)α`.
    pub fn reflect(&self, alpha: &Vector, v: &Vector) -> Result<Vector> {
        self.check_dim(alpha)?;
        self.check_dim(v)?;
        let aa = self.inner(alpha, alpha);
        if aa.is_zero() {
            return Err(Error::Invariant("reflection in the zero vector".into()));
        }
        let k = Scalar::from_int(2) * self.inner(v, alpha) / aa;
        Ok(v - &alpha.scale(&k))
    }

    /// Coordinates converted to an orthonormal frame, as floats.
    pub fn orthonormal_f64(&self, v: &Vector) -> Vec<f64> {
        let x = v.to_f64();
        let Some(g) = &self.form else {
            return x;
        };
        // G = LLᵀ, so ⟨u,v⟩ = (Lᵀu)·(Lᵀv)
        let n = self.dim;
        let g: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
        let mut l = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
                if i == j {
                    l[i][j] = (g[i][i] - s).sqrt();
                } else {
                    l[i][j] = (g[i][j] - s) / l[j][j];
                }
            }
        }
        (0..n).map(|j| (j..n).map(|i| l[i][j] * x[i]).sum()).collect()
    }
}

/// A root together with its coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub coords: Vector,
    /// Coordinates in the basis Δ of simple roots.
    pub simple_coords: Vector,
    pub positive: bool,
    pub simple: bool,
    pub index: usize,
}

/// A simple reflection's two names: ASCII for command lines, Unicode for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorName {
    pub ascii: String,
    pub pretty: String,
}

/// A finite root system with its simple system Δ.
///
/// Root indices are laid out as `0..r` for Δ, `r..N` for the remaining
/// positive roots, and `N + i` for the negative of root `i`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub group_type: GroupType,
    pub context: VectorSpaceContext,
    pub roots: Vec<Root>,
    rank: usize,
    num_positive: usize,
    pub names: Vec<GeneratorName>,
    radicand: Option<u32>,
    exact: bool,
    simple_gram_inverse: Matrix,
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

struct Factor {
    dim: usize,
    form: Option<Matrix>,
    simple: Vec<Vector>,
    names: Vec<GeneratorName>,
    radicand: Option<u32>,
    exact: bool,
}

fn name(ascii: impl Into<String>, pretty: impl Into<String>) -> GeneratorName {
    GeneratorName {
        ascii: ascii.into(),
        pretty: pretty.into(),
    }
}

fn diff(dim: usize, plus: usize, minus: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v.0[plus] = Scalar::one();
    v.0[minus] = Scalar::from_int(-1);
    v
}

fn v2(x: Scalar, y: Scalar) -> Vector {
    Vector(vec![x, y])
}

fn dihedral(m: u32) -> Factor {
    let names = vec![name("s", "s"), name("t", "t")];
    let exact_factor = |simple, radicand, form| Factor {
        dim: 2,
        form,
        simple,
        names: names.clone(),
        radicand,
        exact: true,
    };
    match m {
        2 => exact_factor(vec![Vector::unit(2, 0), Vector::unit(2, 1)], None, None),
        3 => exact_factor(
            vec![
                v2(Scalar::sqrt(3), Scalar::one()),
                v2(-Scalar::sqrt(3), Scalar::one()),
            ],
            Some(3),
            None,
        ),
        4 => exact_factor(vec![Vector::unit(2, 0), Vector::from_ints(&[-1, 1])], None, None),
        5 => {
            // simple-root basis with ⟨α_s,α_t⟩ = −cos(π/5) = −(1+√5)/4
            let c = Scalar::quadratic((-1, 4), (-1, 4), 5);
            let form = vec![vec![Scalar::one(), c.clone()], vec![c, Scalar::one()]];
            Factor {
                dim: 2,
                form: Some(form),
                simple: vec![Vector::unit(2, 0), Vector::unit(2, 1)],
                names: names.clone(),
                radicand: Some(5),
                exact: true,
            }
        }
        6 => exact_factor(
            vec![Vector::from_ints(&[2, 0]), v2(-Scalar::sqrt(3), Scalar::one())],
            Some(3),
            None,
        ),
        _ => {
            let theta = std::f64::consts::PI / m as f64;
            Factor {
                dim: 2,
                form: None,
                simple: vec![
                    v2(Scalar::float(1.0), Scalar::float(0.0)),
                    v2(Scalar::float(-theta.cos()), Scalar::float(theta.sin())),
                ],
                names: names.clone(),
                radicand: None,
                exact: false,
            }
        }
    }
}

fn factor_data(ty: &GroupType) -> Factor {
    match ty {
        GroupType::A(n) => {
            let dim = n + 1;
            Factor {
                dim,
                form: None,
                simple: (0..*n).map(|i| diff(dim, i + 1, i)).collect(),
                names: (1..=*n).map(|i| name(format!("t{i}"), format!("τ{}", subscript(i)))).collect(),
                radicand: None,
                exact: true,
            }
        }
        GroupType::B(n) => {
            let mut simple = vec![Vector::unit(*n, 0)];
            simple.extend((0..n - 1).map(|i| diff(*n, i + 1, i)));
            let mut names = vec![name("s0", "s₀")];
            names.extend((1..*n).map(|i| name(format!("t{i}"), format!("τ{}", subscript(i)))));
            Factor {
                dim: *n,
                form: None,
                simple,
                names,
                radicand: None,
                exact: true,
            }
        }
        GroupType::I2(m) => dihedral(*m),
        GroupType::H3 => {
            let half = |a: i64, b: i64| Scalar::quadratic((a, 2), (b, 2), 5);
            Factor {
                dim: 3,
                form: None,
                simple: vec![
                    Vector::from_ints(&[2, 0, 0]),
                    Vector(vec![half(-1, -1), half(-1, 1), Scalar::from_int(-1)]),
                    Vector::from_ints(&[0, 0, 2]),
                ],
                names: (1..=3).map(|i| name(format!("s{i}"), format!("s{}", subscript(i)))).collect(),
                radicand: Some(5),
                exact: true,
            }
        }
        GroupType::Product(_) => unreachable!("products are flattened by the caller"),
    }
}

fn assemble(ty: &GroupType) -> Factor {
    let factors: Vec<&GroupType> = ty.factors();
    if factors.len() == 1 {
        return factor_data(factors[0]);
    }
    let parts: Vec<Factor> = factors.iter().map(|f| factor_data(f)).collect();
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let radicands: std::collections::BTreeSet<u32> = parts.iter().filter_map(|p| p.radicand).collect();
    let exact = parts.iter().all(|p| p.exact) && radicands.len() <= 1;
    let any_form = parts.iter().any(|p| p.form.is_some());
    let mut form: Matrix = vec![vec![Scalar::zero(); dim]; dim];
    let mut simple = Vec::new();
    let mut names = Vec::new();
    let mut offset = 0;
    for (k, p) in parts.iter().enumerate() {
        for i in 0..p.dim {
            for j in 0..p.dim {
                form[offset + i][offset + j] = match &p.form {
                    Some(g) => g[i][j].clone(),
                    None if i == j => Scalar::one(),
                    None => Scalar::zero(),
                };
            }
        }
        for s in &p.simple {
            let mut v = Vector::zeros(dim);
            for (i, x) in s.iter().enumerate() {
                v.0[offset + i] = x.clone();
            }
            simple.push(v);
        }
        for n in &p.names {
            names.push(name(format!("{}_{}", n.ascii, k + 1), format!("{}_{}", n.pretty, k + 1)));
        }
        offset += p.dim;
    }
    Factor {
        dim,
        form: any_form.then_some(form),
        simple,
        names,
        radicand: if exact { radicands.into_iter().next() } else { None },
        exact,
    }
}

impl RootSystem {
    /// Builds the root system of `ty`, choosing exact arithmetic when possible.
    pub fn build(ty: &GroupType) -> Result<Self> {
        Self::build_with(ty, Arithmetic::Auto)
    }

    pub fn build_with(ty: &GroupType, mode: Arithmetic) -> Result<Self> {
        ty.validate()?;
        let mut f = assemble(ty);
        if mode == Arithmetic::Exact && !f.exact {
            return Err(Error::InexactField(ty.to_string()));
        }
        if mode == Arithmetic::Float || !f.exact {
            f.simple = f.simple.iter().map(Vector::to_float).collect();
            f.form = f
                .form
                .map(|g| g.iter().map(|r| r.iter().map(Scalar::to_float).collect()).collect());
            f.exact = false;
            f.radicand = None;
        }
        let context = VectorSpaceContext {
            dim: f.dim,
            basis: if f.form.is_some() && f.simple.iter().enumerate().all(|(i, s)| *s == Vector::unit(f.dim, i)) {
                BasisTag::SimpleRootBasis
            } else {
                BasisTag::AmbientOrthonormal
            },
            form: f.form,
        };
        if !context.is_valid() {
            return Err(Error::Invariant("bilinear form is not positive definite".into()));
        }
        let rank = f.simple.len();
        let gram: Matrix = f
            .simple
            .iter()
            .map(|a| f.simple.iter().map(|b| context.inner(a, b)).collect())
            .collect();
        let simple_gram_inverse =
            linalg::inverse(&gram).ok_or_else(|| Error::Invariant("simple roots are linearly dependent".into()))?;

        // orbit of Δ under the simple reflections
        let mut found: Vec<Vector> = f.simple.clone();
        let mut queue: VecDeque<usize> = (0..found.len()).collect();
        while let Some(i) = queue.pop_front() {
            for s in &f.simple {
                let r = context.reflect(s, &found[i])?;
                if !found.contains(&r) {
                    found.push(r);
                    queue.push_back(found.len() - 1);
                    if found.len() > 10_000 {
                        return Err(Error::Invariant("root orbit does not close".into()));
                    }
                }
            }
        }

        let simple_coords = |v: &Vector| -> Vector {
            let pairings: Vec<Scalar> = f.simple.iter().map(|a| context.inner(v, a)).collect();
            Vector(
                simple_gram_inverse
                    .iter()
                    .map(|row| row.iter().zip(&pairings).map(|(g, p)| g * p).sum())
                    .collect(),
            )
        };

        let mut positive: Vec<(Vector, Vector)> = Vec::new();
        for v in &found {
            let c = simple_coords(v);
            let nonneg = c.iter().all(|x| !x.is_negative());
            let nonpos = c.iter().all(|x| !x.is_positive());
            if nonneg == nonpos {
                return Err(Error::Invariant(format!("root {v} is neither positive nor negative")));
            }
            if nonneg {
                positive.push((v.clone(), c));
            }
        }
        if positive.len() * 2 != found.len() {
            return Err(Error::Invariant("root system is not closed under negation".into()));
        }
        let is_simple = |c: &Vector| (0..rank).any(|i| *c == Vector::unit(rank, i));
        positive.sort_by(|(_, x), (_, y)| {
            let key = |c: &Vector| {
                let simple_pos = (0..rank).find(|&i| *c == Vector::unit(rank, i));
                let height: Scalar = c.iter().cloned().sum();
                (simple_pos.is_none(), simple_pos, height)
            };
            key(x).cmp(&key(y)).then_with(|| y.cmp(x))
        });
        let n = positive.len();
        let mut roots = Vec::with_capacity(2 * n);
        for (i, (v, c)) in positive.iter().enumerate() {
            roots.push(Root {
                coords: v.clone(),
                simple_coords: c.clone(),
                positive: true,
                simple: is_simple(c),
                index: i,
            });
        }
        for (i, (v, c)) in positive.iter().enumerate() {
            roots.push(Root {
                coords: -v,
                simple_coords: -c,
                positive: false,
                simple: false,
                index: n + i,
            });
        }
        let rs = RootSystem {
            group_type: ty.clone(),
            context,
            roots,
            rank,
            num_positive: n,
            names: f.names,
            radicand: f.radicand,
            exact: f.exact,
            simple_gram_inverse,
        };
        rs.check_closure()?;
        Ok(rs)
    }

    fn check_closure(&self) -> Result<()> {
        for i in 0..self.rank {
            for r in &self.roots {
                let image = self.reflect(i, &r.coords)?;
                if self.find(&image).is_none() {
                    return Err(Error::Invariant(format!("root {} leaves Φ under s_{i}", r.coords)));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Radicand `d` of the coordinate field ℚ(√d), `None` for ℚ or floats.
    pub fn radicand(&self) -> Option<u32> {
        self.radicand
    }

    pub fn dim(&self) -> usize {
        self.context.dim
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.rank]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    /// Index of `−β` for root index `i`.
    pub fn negation(&self, i: usize) -> usize {
        (i + self.num_positive) % (2 * self.num_positive)
    }

    /// Indices of Φ≥−1 = −Δ ∪ Φ⁺, with −Δ listed first.
    pub fn almost_positive(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|i| self.negation(i))
            .chain(0..self.num_positive)
            .collect()
    }

    pub fn find(&self, v: &Vector) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == *v)
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> Scalar {
        self.context.inner(u, v)
    }

    /// Reflection in the root with the given index.
    pub fn reflect(&self, root: usize, v: &Vector) -> Result<Vector> {
        self.context.reflect(&self.roots[root].coords, v)
    }

    /// Gram matrix ⟨α_i, α_j⟩ of the simple roots.
    pub fn simple_gram(&self) -> Matrix {
        let s = self.simple_roots();
        s.iter().map(|a| s.iter().map(|b| self.inner(&a.coords, &b.coords)).collect()).collect()
    }

    /// Coordinates of the orthogonal projection of `v` onto span(Δ), in the basis Δ.
    pub fn simple_coordinates(&self, v: &Vector) -> Vector {
        let pairings: Vec<Scalar> = self.simple_roots().iter().map(|a| self.inner(v, &a.coords)).collect();
        Vector(
            self.simple_gram_inverse
                .iter()
                .map(|row| row.iter().zip(&pairings).map(|(g, p)| g * p).sum())
                .collect(),
        )
    }

    /// The vector `Σ c_i α_i`.
    pub fn from_simple_coordinates(&self, c: &Vector) -> Vector {
        let basis: Vec<Vector> = self.simple_roots().iter().map(|r| r.coords.clone()).collect();
        Vector::combination(&c.0, &basis, self.dim())
    }

    /// The dual basis vector ω_i ∈ span(Δ) with ⟨ω_i, α_j⟩ = δ_ij.
    pub fn fundamental_weight(&self, i: usize) -> Vector {
        let row = Vector(self.simple_gram_inverse[i].clone());
        self.from_simple_coordinates(&row)
    }

    /// The unique `a ∈ span(Δ)` with `⟨a, α⟩ = 1` for every simple root α.
    pub fn default_basepoint(&self) -> Vector {
        let y = Vector(
            self.simple_gram_inverse
                .iter()
                .map(|row| row.iter().cloned().sum())
                .collect(),
        );
        self.from_simple_coordinates(&y)
    }

    /// Smallest positive multiple of [`RootSystem::default_basepoint`] whose
    /// simple-root coordinates are integers; `None` when they are irrational.
    pub fn integral_basepoint(&self) -> Option<Vector> {
        let a = self.default_basepoint();
        let coords = self.simple_coordinates(&a);
        let mut lcm = BigInt::one();
        for x in coords.iter() {
            lcm = lcm.lcm(x.as_rational()?.denom());
        }
        Some(a.scale(&Scalar::from(BigRational::from_integer(lcm))))
    }

    /// First positive root orthogonal to `a`, if any; `None` means `a` is generic.
    pub fn genericity_witness(&self, a: &Vector) -> Result<Option<usize>> {
        self.context.check_dim(a)?;
        Ok(self
            .positive_roots()
            .iter()
            .position(|r| self.inner(a, &r.coords).is_zero()))
    }

    pub fn is_generic(&self, a: &Vector) -> Result<bool> {
        Ok(self.genericity_witness(a)?.is_none())
    }

    /// Checks that `a` is generic and pairs positively with every simple root.
    pub fn check_basepoint(&self, a: &Vector) -> Result<()> {
        if let Some(w) = self.genericity_witness(a)? {
            return Err(Error::NonGeneric {
                root: self.roots[w].coords.to_string(),
            });
        }
        if let Some(i) = self
            .simple_roots()
            .iter()
            .position(|r| !self.inner(a, &r.coords).is_positive())
        {
            return Err(Error::OutsideChamber { index: i });
        }
        Ok(())
    }

    /// `⟨a, α⟩` equal for all simple roots α.
    pub fn is_balanced(&self, a: &Vector) -> bool {
        let p: Vec<Scalar> = self.simple_roots().iter().map(|r| self.inner(a, &r.coords)).collect();
        p.windows(2).all(|w| w[0] == w[1])
    }

    /// Integral Cartan integers `2⟨α_i,α_j⟩/⟨α_j,α_j⟩` on Δ.
    pub fn is_crystallographic(&self) -> bool {
        let g = self.simple_gram();
        self.exact
            && (0..self.rank).all(|i| {
                (0..self.rank).all(|j| (Scalar::from_int(2) * &g[i][j] / &g[j][j]).is_integer())
            })
    }

    /// `{"type", "field", "simple_roots", "positive_roots"}` with exact scalar strings.
    pub fn to_json(&self) -> serde_json::Value {
        let field = match (self.exact, self.radicand) {
            (false, _) => serde_json::json!("float"),
            (true, Some(d)) => serde_json::json!({ "d": d }),
            (true, None) => serde_json::json!({ "d": 1 }),
        };
        serde_json::json!({
            "type": self.group_type.to_string(),
            "field": field,
            "simple_roots": self.simple_roots().iter().map(|r| &r.coords).collect::<Vec<_>>(),
            "positive_roots": self.positive_roots().iter().map(|r| &r.coords).collect::<Vec<_>>(),
        })
    }

    pub fn root_label(&self, i: usize) -> String {
        self.roots[i].coords.to_string()
    }

    /// A root written in the simple-root basis, like `α₁+2α₂` or `-α₃`.
    pub fn root_in_simple_basis(&self, i: usize) -> String {
        let c = &self.roots[i].simple_coords;
        let mut out = String::new();
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let coeff = if *x == Scalar::one() {
                String::new()
            } else if *x == Scalar::from_int(-1) {
                "-".into()
            } else {
                let s = x.to_string();
                if s.contains(['+', '√']) && s.chars().skip(1).any(|ch| ch == '+' || ch == '-') {
                    format!("({s})")
                } else {
                    s
                }
            };
            if !out.is_empty() && !coeff.starts_with('-') {
                out.push('+');
            }
            out.push_str(&format!("{coeff}α{}", subscript(j + 1)));
        }
        out
    }
}
