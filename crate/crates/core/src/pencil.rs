//! Degree-one matrix pencils on the sphere, `P(x) = C + Σ x_i M_i`, the
//! antipodal involution at pencil level, exact symbolic unitarity, and
//! classification against the symmetry rows of the unitary picture of the
//! K-groups.
//!
//! The single most error-prone convention lives here and is frozen once:
//! the involution induced on matrix functions acts as antipodal
//! substitution `x -> -x` combined with the matrix involution (transpose or
//! blockwise sharp), and carries **no complex conjugation**. On a pencil
//! this sends coefficients to minus their involution and the constant to
//! plus its involution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::involutions::{self, PictureDirection};

/// Sphere tolerance for floating-point evaluation points.
pub const ON_SPHERE_TOL: f64 = 1e-12;

/// `P(x) = C + Σ_{i=1..d+1} x_i M_i` on the unit sphere in `R^{d+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpherePencil {
    d: usize,
    n: usize,
    coefficients: Vec<ExactMatrix>,
    constant: Option<ExactMatrix>,
}

impl SpherePencil {
    pub fn new(
        d: usize,
        coefficients: Vec<ExactMatrix>,
        constant: Option<ExactMatrix>,
    ) -> Result<Self> {
        if coefficients.len() != d + 1 {
            return Err(Error::dim(format!(
                "a pencil on the {d}-sphere needs {} coefficients, got {}",
                d + 1,
                coefficients.len()
            )));
        }
        let n = coefficients[0].size();
        if coefficients.iter().any(|m| m.size() != n)
            || constant.as_ref().is_some_and(|c| c.size() != n)
        {
            return Err(Error::dim("all pencil matrices must share one size".to_string()));
        }
        Ok(SpherePencil { d, n, coefficients, constant })
    }

    /// The constant pencil `P(x) = C`.
    pub fn constant_pencil(d: usize, c: ExactMatrix) -> Self {
        let n = c.size();
        SpherePencil { d, n, coefficients: vec![ExactMatrix::zeros(n); d + 1], constant: Some(c) }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[ExactMatrix] {
        &self.coefficients
    }

    pub fn constant(&self) -> Option<&ExactMatrix> {
        self.constant.as_ref()
    }

    /// Evaluate at a floating-point sphere point.
    pub fn evaluate(&self, x: &[f64]) -> Result<CMat> {
        if x.len() != self.d + 1 {
            return Err(Error::domain(format!(
                "point has {} coordinates, pencil lives on the {}-sphere",
                x.len(),
                self.d
            )));
        }
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if (r2 - 1.0).abs() > ON_SPHERE_TOL {
            return Err(Error::domain(format!("point is off the sphere: |x|^2 = {r2:.15}")));
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> CMat {
        let mut out = match &self.constant {
            Some(c) => c.to_complex(),
            None => CMat::zeros(self.n),
        };
        for (xi, m) in x.iter().zip(&self.coefficients) {
            out = out.add(&m.to_complex().scale(Complex64::new(*xi, 0.0)));
        }
        out
    }

    /// Pointwise adjoint: every matrix is replaced by its adjoint.
    pub fn star(&self) -> SpherePencil {
        SpherePencil {
            d: self.d,
            n: self.n,
            coefficients: self.coefficients.iter().map(ExactMatrix::adjoint).collect(),
            constant: self.constant.as_ref().map(ExactMatrix::adjoint),
        }
    }

    pub fn neg(&self) -> SpherePencil {
        SpherePencil {
            d: self.d,
            n: self.n,
            coefficients: self.coefficients.iter().map(ExactMatrix::neg).collect(),
            constant: self.constant.as_ref().map(ExactMatrix::neg),
        }
    }

    /// Transpose combined with antipodal substitution: coefficients map to
    /// minus their transpose, the constant to plus its transpose.
    pub fn apply_tr_tau(&self) -> SpherePencil {
        SpherePencil {
            d: self.d,
            n: self.n,
            coefficients: self.coefficients.iter().map(|m| m.transpose().neg()).collect(),
            constant: self.constant.as_ref().map(ExactMatrix::transpose),
        }
    }

    /// Blockwise sharp transpose combined with antipodal substitution;
    /// requires even size.
    pub fn apply_sharp_tr_tau(&self) -> Result<SpherePencil> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|m| involutions::sharp_tr(m).map(|s| s.neg()))
            .collect::<Result<Vec<_>>>()?;
        let constant = self.constant.as_ref().map(involutions::sharp_tr).transpose()?;
        Ok(SpherePencil { d: self.d, n: self.n, coefficients, constant })
    }

    /// Coefficient-wise sum of two pencils over the same sphere.
    pub fn add(&self, other: &SpherePencil) -> Result<SpherePencil> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::dim("pencil sum requires matching sphere and size".to_string()));
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        let constant = match (&self.constant, &other.constant) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(a.add(b)?),
        };
        Ok(SpherePencil { d: self.d, n: self.n, coefficients, constant })
    }

    /// Entrywise division by 2 (exact).
    pub fn halve(&self) -> SpherePencil {
        SpherePencil {
            d: self.d,
            n: self.n,
            coefficients: self.coefficients.iter().map(ExactMatrix::halve).collect(),
            constant: self.constant.as_ref().map(ExactMatrix::halve),
        }
    }

    /// Conjugate every matrix of the pencil by a constant unitary:
    /// `M -> v·M·v*`.
    pub fn conjugate_by(&self, v: &ExactMatrix) -> Result<SpherePencil> {
        if !v.is_unitary() {
            return Err(Error::contract("conjugation requires a unitary matrix"));
        }
        let vs = v.adjoint();
        let conj = |m: &ExactMatrix| v.mul(m).and_then(|p| p.mul(&vs));
        let coefficients = self.coefficients.iter().map(conj).collect::<Result<Vec<_>>>()?;
        let constant = self.constant.as_ref().map(conj).transpose()?;
        Ok(SpherePencil { d: self.d, n: self.n, coefficients, constant })
    }

    /// Multiply every matrix of the pencil on the right by a constant.
    pub fn mul_const_right(&self, m: &ExactMatrix) -> Result<SpherePencil> {
        let coefficients =
            self.coefficients.iter().map(|c| c.mul(m)).collect::<Result<Vec<_>>>()?;
        let constant = self.constant.as_ref().map(|c| c.mul(m)).transpose()?;
        Ok(SpherePencil { d: self.d, n: self.n, coefficients, constant })
    }

    /// Convert a unitary pencil between the transpose-based and sharp-based
    /// pictures by right multiplication with `±W`.
    pub fn picture_convert(&self, direction: PictureDirection) -> Result<SpherePencil> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::dim(format!(
                "picture conversion requires an even size, got {}",
                self.n
            )));
        }
        if !self.is_unitary_symbolic().ok {
            return Err(Error::contract("picture conversion requires a unitary pencil"));
        }
        let w = involutions::w_matrix(self.n / 2);
        match direction {
            PictureDirection::ToSharpPicture => self.mul_const_right(&w),
            PictureDirection::ToTrPicture => self.mul_const_right(&w.neg()),
        }
    }

    /// Coefficient-diagonal direct sum of two pencils over the same sphere.
    pub fn direct_sum(&self, other: &SpherePencil) -> Result<SpherePencil> {
        if self.d != other.d {
            return Err(Error::dim(format!(
                "cannot direct-sum pencils over different spheres ({} vs {})",
                self.d, other.d
            )));
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        let zero_a = ExactMatrix::zeros(self.n);
        let zero_b = ExactMatrix::zeros(other.n);
        let constant = match (&self.constant, &other.constant) {
            (None, None) => None,
            (a, b) => Some(a.as_ref().unwrap_or(&zero_a).block_diag(b.as_ref().unwrap_or(&zero_b))),
        };
        Ok(SpherePencil { d: self.d, n: self.n + other.n, coefficients, constant })
    }

    /// Exact decision of `P(x)·P(x)* = I` identically on the sphere, via
    /// the coefficient identities
    /// `M_i C* + C M_i* = 0` and `M_i M_j* + M_j M_i* = 2 δ_ij (I - C C*)`.
    pub fn is_unitary_symbolic(&self) -> UnitarityCertificate {
        let mut violations = Vec::new();
        let id = ExactMatrix::identity(self.n);
        let cc = self.constant.as_ref().map(|c| c.mul(&c.adjoint()).expect("same size"));
        let gap = match &cc {
            Some(p) => id.sub(p).expect("same size"),
            None => id,
        };
        if let Some(c) = &self.constant {
            for (i, m) in self.coefficients.iter().enumerate() {
                let cross = m
                    .mul(&c.adjoint())
                    .and_then(|a| c.mul(&m.adjoint()).and_then(|b| a.add(&b)))
                    .expect("same size");
                if !cross.is_zero() {
                    violations.push(format!("M{}·C* + C·M{}* is nonzero", i + 1, i + 1));
                }
            }
        }
        let two_gap = gap.add(&gap).expect("same size");
        for i in 0..self.coefficients.len() {
            for j in i..self.coefficients.len() {
                let (a, b) = (&self.coefficients[i], &self.coefficients[j]);
                let sum = a
                    .mul(&b.adjoint())
                    .and_then(|p| b.mul(&a.adjoint()).and_then(|q| p.add(&q)))
                    .expect("same size");
                let ok = if i == j { sum == two_gap } else { sum.is_zero() };
                if !ok {
                    violations.push(format!(
                        "M{}·M{}* + M{}·M{}* != 2δ(I - C·C*)",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ));
                }
            }
        }
        UnitarityCertificate { ok: violations.is_empty(), violations }
    }

    /// Whether the pencil satisfies one symmetry relation, decided exactly
    /// at coefficient level. Sharp relations are never satisfied on odd
    /// sizes.
    pub fn relation_holds(&self, relation: Relation) -> bool {
        match relation {
            Relation::SelfAdjoint => self.star() == *self,
            Relation::TrTauPlus => self.apply_tr_tau() == *self,
            Relation::TrTauMinus => self.apply_tr_tau() == self.neg(),
            Relation::TrTauStar => self.apply_tr_tau() == self.star(),
            Relation::SharpTauPlus => {
                self.apply_sharp_tr_tau().map(|p| p == *self).unwrap_or(false)
            }
            Relation::SharpTauMinus => {
                self.apply_sharp_tr_tau().map(|p| p == self.neg()).unwrap_or(false)
            }
            Relation::SharpTauStar => {
                self.apply_sharp_tr_tau().map(|p| p == self.star()).unwrap_or(false)
            }
        }
    }

    pub fn satisfies_row(&self, row: RowId) -> bool {
        row.relations().iter().all(|&r| self.relation_holds(r))
    }

    /// Every symmetry row whose full relation set holds, in canonical
    /// order. Requires a symbolically unitary pencil. Size divisibility by
    /// the row's block quantum is reported by [`Self::divisibility_ok`],
    /// not enforced here.
    pub fn classify(&self) -> Result<Vec<RowId>> {
        let cert = self.is_unitary_symbolic();
        if !cert.ok {
            return Err(Error::contract(format!(
                "classification requires a unitary pencil; first violation: {}",
                cert.violations.first().cloned().unwrap_or_default()
            )));
        }
        Ok(RowId::ALL.iter().copied().filter(|r| self.satisfies_row(*r)).collect())
    }

    pub fn divisibility_ok(&self, row: RowId) -> bool {
        self.n.is_multiple_of(row.block_quantum())
    }

    /// Pad with the row's neutral element: block-diagonal pencil whose
    /// extra block is the constant `I^(i)`. Still satisfies the row's
    /// relations and stays symbolically unitary.
    pub fn stabilize(&self, row: RowId) -> Result<SpherePencil> {
        let rows = self.classify()?;
        if !rows.contains(&row) {
            return Err(Error::contract(format!(
                "pencil does not satisfy the relations of row {row}"
            )));
        }
        let neutral = SpherePencil::constant_pencil(self.d, row.neutral());
        self.direct_sum(&neutral)
    }
}

/// Outcome of the symbolic unitarity decision, with the failing coefficient
/// identities when it does not hold.
#[derive(Clone, Debug)]
pub struct UnitarityCertificate {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// One symmetry relation a row may require of a unitary `u` over the
/// sphere algebra. `TrTau`/`SharpTau` refer to the matrix involution
/// combined with antipodal substitution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    SelfAdjoint,
    TrTauPlus,
    TrTauMinus,
    TrTauStar,
    SharpTauPlus,
    SharpTauMinus,
    SharpTauStar,
}

/// Row of the unitary-picture table: the K-group it presents, the required
/// relations, the block quantum and the neutral element. The rows for
/// degrees -1 and 3 exist in two equivalent variants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum RowId {
    Ku0,
    Ku1,
    KoM1,
    KoM1Alt,
    Ko0,
    Ko1,
    Ko2,
    Ko3,
    Ko3Alt,
    Ko4,
    Ko5,
    Ko6,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    Main,
    Alt,
}

impl RowId {
    /// Canonical (label, variant) order.
    pub const ALL: [RowId; 12] = [
        RowId::Ku0,
        RowId::Ku1,
        RowId::KoM1,
        RowId::KoM1Alt,
        RowId::Ko0,
        RowId::Ko1,
        RowId::Ko2,
        RowId::Ko3,
        RowId::Ko3Alt,
        RowId::Ko4,
        RowId::Ko5,
        RowId::Ko6,
    ];

    pub fn relations(self) -> &'static [Relation] {
        use Relation::*;
        match self {
            RowId::Ku0 => &[SelfAdjoint],
            RowId::Ku1 => &[],
            RowId::KoM1 => &[TrTauPlus],
            RowId::KoM1Alt => &[SharpTauMinus],
            RowId::Ko0 => &[SelfAdjoint, TrTauPlus],
            RowId::Ko1 => &[TrTauStar],
            RowId::Ko2 => &[SelfAdjoint, TrTauMinus],
            RowId::Ko3 => &[SharpTauPlus],
            RowId::Ko3Alt => &[TrTauMinus],
            RowId::Ko4 => &[SelfAdjoint, SharpTauPlus],
            RowId::Ko5 => &[SharpTauStar],
            RowId::Ko6 => &[SelfAdjoint, SharpTauMinus],
        }
    }

    /// The `n_i` column: representatives live in sizes divisible by this.
    pub fn block_quantum(self) -> usize {
        match self {
            RowId::Ku1 | RowId::KoM1 | RowId::Ko1 => 1,
            RowId::Ko4 => 4,
            _ => 2,
        }
    }

    /// The neutral element `I^(i)` used for stabilization.
    pub fn neutral(self) -> ExactMatrix {
        match self {
            RowId::Ku1 | RowId::KoM1 | RowId::Ko1 => ExactMatrix::identity(1),
            RowId::Ku0 | RowId::Ko0 => {
                ExactMatrix::from_gauss([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]])
            }
            RowId::KoM1Alt | RowId::Ko3Alt => involutions::w2(),
            RowId::Ko2 | RowId::Ko6 => {
                ExactMatrix::from_gauss([[(0, 0), (0, 1)], [(0, -1), (0, 0)]])
            }
            RowId::Ko3 | RowId::Ko5 => ExactMatrix::identity(2),
            RowId::Ko4 => ExactMatrix::identity(2).block_diag(&ExactMatrix::identity(2).neg()),
        }
    }

    /// True for the complex rows `KU_0`, `KU_1`.
    pub fn is_complex(self) -> bool {
        matches!(self, RowId::Ku0 | RowId::Ku1)
    }

    /// K-degree of the row, reduced mod 8 for KO rows (degree -1 reported
    /// as -1) and mod 2 for KU rows.
    pub fn degree(self) -> i8 {
        match self {
            RowId::Ku0 => 0,
            RowId::Ku1 => 1,
            RowId::KoM1 | RowId::KoM1Alt => -1,
            RowId::Ko0 => 0,
            RowId::Ko1 => 1,
            RowId::Ko2 => 2,
            RowId::Ko3 | RowId::Ko3Alt => 3,
            RowId::Ko4 => 4,
            RowId::Ko5 => 5,
            RowId::Ko6 => 6,
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            RowId::KoM1Alt | RowId::Ko3Alt => Variant::Alt,
            _ => Variant::Main,
        }
    }

    /// Parse user-facing names like `KO_4`, `KO_-1`, `ko3alt`,
    /// `KO_-1-alt`, `KO_3 (alt)`.
    pub fn parse(text: &str) -> Result<RowId> {
        let norm: String = text
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '-')
            .collect::<String>()
            .to_ascii_uppercase();
        let (base, alt) = match norm.strip_suffix("ALT") {
            Some(rest) => (rest.trim_end_matches('-'), true),
            None => (norm.as_str(), false),
        };
        let row = match (base, alt) {
            ("KU0", false) => RowId::Ku0,
            ("KU1", false) => RowId::Ku1,
            ("KO-1" | "KO7", false) => RowId::KoM1,
            ("KO-1" | "KO7", true) => RowId::KoM1Alt,
            ("KO0", false) => RowId::Ko0,
            ("KO1", false) => RowId::Ko1,
            ("KO2", false) => RowId::Ko2,
            ("KO3", false) => RowId::Ko3,
            ("KO3", true) => RowId::Ko3Alt,
            ("KO4", false) => RowId::Ko4,
            ("KO5", false) => RowId::Ko5,
            ("KO6", false) => RowId::Ko6,
            _ => return Err(Error::domain(format!("unknown symmetry row '{text}'"))),
        };
        Ok(row)
    }
}

impl std::fmt::Display for RowId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let base = if self.is_complex() { "KU" } else { "KO" };
        write!(f, "{}_{}", base, self.degree())?;
        if self.variant() == Variant::Alt {
            write!(f, " (alt)")?;
        }
        Ok(())
    }
}

/// Serialization container for pencils:
/// `{ "d": int, "n": int, "coefficients": [...], "constant": ...|null,
///   "meta": {...} }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilDocument {
    pub d: usize,
    pub n: usize,
    pub coefficients: Vec<ExactMatrix>,
    pub constant: Option<ExactMatrix>,
    #[serde(default)]
    pub meta: serde_json::Map<String, serde_json::Value>,
}

impl PencilDocument {
    pub fn from_pencil(p: &SpherePencil) -> Self {
        PencilDocument {
            d: p.d(),
            n: p.size(),
            coefficients: p.coefficients().to_vec(),
            constant: p.constant().cloned(),
            meta: serde_json::Map::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: serde_json::Value) -> Self {
        self.meta.insert(key.to_string(), value);
        self
    }

    pub fn into_pencil(self) -> Result<SpherePencil> {
        let p = SpherePencil::new(self.d, self.coefficients, self.constant)?;
        if p.size() != self.n {
            return Err(Error::dim(format!(
                "document declares n = {} but matrices have size {}",
                self.n,
                p.size()
            )));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{standard_gamma, upsilon, PhaseConvention};
    use crate::exact::Dyadic;

    fn q_pencil(k: u32, real: bool) -> SpherePencil {
        let fam = if real {
            upsilon(k, PhaseConvention::PerFactorI).unwrap()
        } else {
            standard_gamma(k).unwrap()
        };
        SpherePencil::new(k as usize - 1, fam.generators().to_vec(), None).unwrap()
    }

    #[test]
    fn evaluate_picks_out_single_terms() {
        let p = q_pencil(3, false);
        let m = p.evaluate(&[0.0, 0.0, 1.0]).unwrap();
        let expected = standard_gamma(3).unwrap().generator(3).to_complex();
        assert!(m.sub(&expected).max_norm() < 1e-15);
        assert!(p.evaluate(&[0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn tau_operations_are_involutive() {
        let p = q_pencil(5, true);
        assert_eq!(p.apply_tr_tau().apply_tr_tau(), p);
        let sharped = p.apply_sharp_tr_tau().unwrap();
        assert_eq!(sharped.apply_sharp_tr_tau().unwrap(), p);
        assert_eq!(p.star().star(), p);
    }

    #[test]
    fn clifford_pencils_are_symbolically_unitary() {
        for k in [1u32, 3, 5, 7] {
            let p = q_pencil(k, true);
            let cert = p.is_unitary_symbolic();
            assert!(cert.ok, "k = {k}: {:?}", cert.violations);
        }
    }

    #[test]
    fn crossed_coefficients_fail_unitarity() {
        let id = ExactMatrix::identity(2);
        let p = SpherePencil::new(1, vec![id.clone(), id], None).unwrap();
        let cert = p.is_unitary_symbolic();
        assert!(!cert.ok);
        assert!(cert.violations[0].contains("M1·M2*"));
        assert!(matches!(p.classify(), Err(Error::Contract(_))));
    }

    #[test]
    fn identity_pencil_satisfies_all_plus_rows() {
        let p = SpherePencil::constant_pencil(1, ExactMatrix::identity(2));
        let rows = p.classify().unwrap();
        assert_eq!(
            rows,
            vec![
                RowId::Ku0,
                RowId::Ku1,
                RowId::KoM1,
                RowId::Ko0,
                RowId::Ko1,
                RowId::Ko3,
                RowId::Ko4,
                RowId::Ko5
            ]
        );
    }

    #[test]
    fn neutral_elements_satisfy_their_own_rows() {
        for row in RowId::ALL {
            let p = SpherePencil::constant_pencil(2, row.neutral());
            assert!(p.is_unitary_symbolic().ok, "row {row}");
            assert!(p.satisfies_row(row), "row {row}");
        }
    }

    #[test]
    fn stabilization_keeps_rows_and_unitarity() {
        let p = q_pencil(3, true); // satisfies the degree-4 row
        let s = p.stabilize(RowId::Ko4).unwrap();
        assert_eq!(s.size(), p.size() + 4);
        assert!(s.is_unitary_symbolic().ok);
        assert!(s.satisfies_row(RowId::Ko4));
        // double stabilization equals stabilization by the doubled neutral
        let ss = s.stabilize(RowId::Ko4).unwrap();
        let doubled = p
            .direct_sum(&SpherePencil::constant_pencil(
                p.d(),
                RowId::Ko4.neutral().block_diag(&RowId::Ko4.neutral()),
            ))
            .unwrap();
        assert_eq!(ss, doubled);
        // a row the pencil does not satisfy is a contract error
        assert!(matches!(p.stabilize(RowId::Ko1), Err(Error::Contract(_))));
    }

    #[test]
    fn stabilize_ku0_matches_hand_value() {
        let p = SpherePencil::constant_pencil(1, ExactMatrix::identity(1));
        let s = p.stabilize(RowId::Ku0).unwrap();
        let expected = ExactMatrix::from_gauss([
            [(1, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0)],
        ]);
        assert_eq!(s.constant().unwrap(), &expected);
    }

    #[test]
    fn evaluate_commutes_with_tr_tau() {
        let p = q_pencil(5, true);
        let x = [
            0.2,
            -0.4,
            0.1,
            0.5,
            (1.0f64 - 0.2f64.powi(2) - 0.4f64.powi(2) - 0.1f64.powi(2) - 0.5f64.powi(2)).sqrt(),
        ];
        let lhs = p.apply_tr_tau().evaluate(&x).unwrap();
        let minus_x: Vec<f64> = x.iter().map(|v| -v).collect();
        let rhs = p.evaluate(&minus_x).unwrap().transpose();
        assert!(lhs.sub(&rhs).max_norm() < 1e-12);
    }

    #[test]
    fn row_parsing_round_trips() {
        for row in RowId::ALL {
            assert_eq!(RowId::parse(&row.to_string()).unwrap(), row);
        }
        assert_eq!(RowId::parse("ko-1-alt").unwrap(), RowId::KoM1Alt);
        assert_eq!(RowId::parse("KO_7").unwrap(), RowId::KoM1);
        assert!(RowId::parse("KO_9").is_err());
    }

    #[test]
    fn pencil_document_round_trip() {
        let p = q_pencil(3, true);
        let doc = PencilDocument::from_pencil(&p).with_meta("which", "Q".into());
        let text = serde_json::to_string(&doc).unwrap();
        let back: PencilDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_pencil().unwrap(), p);
    }

    #[test]
    fn picture_convert_round_trips_on_pencils() {
        let p = q_pencil(3, true);
        let v = p.picture_convert(PictureDirection::ToSharpPicture).unwrap();
        assert_eq!(v.picture_convert(PictureDirection::ToTrPicture).unwrap(), p);
    }

    #[test]
    fn scalar_i_coefficient_behaves_under_involutions() {
        // the extra i·I coefficient of a U-type pencil: transpose keeps it,
        // star flips it
        let m = ExactMatrix::scalar(2, Dyadic::i());
        assert_eq!(m.transpose(), m);
        assert_eq!(m.adjoint(), m.neg());
        assert_eq!(involutions::sharp_tr(&m).unwrap(), m);
    }
}
