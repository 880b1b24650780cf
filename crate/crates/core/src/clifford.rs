//! Families of anticommuting self-adjoint unitaries ("Clifford generator
//! families"): the standard inductive family, the residue-dependent
//! selection sets, the product transform that flips transpose/sharp
//! symmetry signs, and full exact verification of all defining relations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Dyadic, ExactMatrix};
use crate::involutions::{self, InvolutionKind};

/// Largest `k` the exact builders accept (matrix size `2^((k-1)/2)`; above
/// this the dense exact products stop being desk-scale).
pub const K_LIMIT: u32 = 21;

/// How a family was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "STANDARD_GAMMA")]
    StandardGamma,
    #[serde(rename = "UPSILON")]
    Upsilon,
    #[serde(rename = "CUSTOM")]
    Custom,
}

/// Phase placement in the product transform. The printed construction puts
/// an `i` on every factor; the sign-flip identity puts a single leading `i`. The two
/// differ only by per-generator signs and have identical symmetry audits.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub enum PhaseConvention {
    #[default]
    #[serde(rename = "PER_FACTOR_I")]
    PerFactorI,
    #[serde(rename = "SINGLE_I")]
    SingleI,
}

/// Sign of a matrix under a linear involution `f`: `Plus` when `f(A) = A`,
/// `Minus` when `f(A) = -A`, `Indefinite` when neither (or when `f` does not
/// apply to the matrix size).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum InvolutionSign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "NONE")]
    Indefinite,
}

impl std::fmt::Display for InvolutionSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvolutionSign::Plus => write!(f, "+"),
            InvolutionSign::Minus => write!(f, "-"),
            InvolutionSign::Indefinite => write!(f, "."),
        }
    }
}

/// Sign of `a` under the given involution.
pub fn involution_sign(kind: InvolutionKind, a: &ExactMatrix) -> InvolutionSign {
    match involutions::apply(kind, a) {
        Ok(fa) => {
            if fa == *a {
                InvolutionSign::Plus
            } else if fa == a.neg() {
                InvolutionSign::Minus
            } else {
                InvolutionSign::Indefinite
            }
        }
        Err(_) => InvolutionSign::Indefinite,
    }
}

/// An ordered list of `k` self-adjoint unitaries of size `2^((k-1)/2)` that
/// pairwise anticommute with squares equal to the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordFamily {
    k: u32,
    n: usize,
    generators: Vec<ExactMatrix>,
    provenance: Provenance,
}

fn check_k(k: u32) -> Result<usize> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be a positive odd integer, got {k}")));
    }
    if k > K_LIMIT {
        return Err(Error::Resource(format!(
            "k = {k} exceeds the supported limit {K_LIMIT} (matrix size 2^((k-1)/2))"
        )));
    }
    Ok(1usize << ((k - 1) / 2))
}

impl CliffordFamily {
    /// Validating constructor: checks the size law and all defining
    /// relations exactly. Used for externally supplied families.
    pub fn new(k: u32, generators: Vec<ExactMatrix>, provenance: Provenance) -> Result<Self> {
        let n = check_k(k)?;
        if generators.len() != k as usize {
            return Err(Error::domain(format!(
                "expected {k} generators, got {}",
                generators.len()
            )));
        }
        if generators.iter().any(|g| g.size() != n) {
            return Err(Error::dim(format!("all generators must have size {n}")));
        }
        let fam = CliffordFamily { k, n, generators, provenance };
        let report = verify_clifford(&fam);
        if !report.relations_hold() {
            return Err(Error::contract(format!(
                "generators do not satisfy the defining relations: {}",
                report.first_failure().unwrap_or_default()
            )));
        }
        Ok(fam)
    }

    fn from_parts(k: u32, generators: Vec<ExactMatrix>, provenance: Provenance) -> Self {
        let n = generators[0].size();
        CliffordFamily { k, n, generators, provenance }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// 1-based access, matching the index convention of the construction.
    pub fn generator(&self, i: usize) -> &ExactMatrix {
        &self.generators[i - 1]
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// A copy with one generator negated (preserves every defining
    /// relation and every involution sign).
    pub fn with_negated(&self, i: usize) -> Self {
        let mut gens = self.generators.clone();
        gens[i - 1] = gens[i - 1].neg();
        CliffordFamily::from_parts(self.k, gens, Provenance::Custom)
    }
}

fn block2(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
    let n = a.size();
    ExactMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a.get(i, j),
        (true, false) => b.get(i, j - n),
        (false, true) => c.get(i - n, j),
        (false, false) => d.get(i - n, j - n),
    })
}

/// The standard inductive family: `[1]` for `k = 1`; the step doubles the
/// size, sending each generator to its off-diagonal embedding and appending
/// the off-diagonal `±i·I` pair and `diag(I, -I)`.
pub fn standard_gamma(k: u32) -> Result<CliffordFamily> {
    check_k(k)?;
    let mut gens = vec![ExactMatrix::identity(1)];
    let mut kk = 1;
    while kk < k {
        let n = gens[0].size();
        let zero = ExactMatrix::zeros(n);
        let mut next: Vec<ExactMatrix> = gens.iter().map(|g| block2(&zero, g, g, &zero)).collect();
        let i_n = ExactMatrix::scalar(n, Dyadic::i());
        next.push(block2(&zero, &i_n, &i_n.neg(), &zero));
        next.push(ExactMatrix::identity(n).block_diag(&ExactMatrix::identity(n).neg()));
        gens = next;
        kk += 2;
    }
    Ok(CliffordFamily::from_parts(k, gens, Provenance::StandardGamma))
}

/// Sorted subset of `{1..k}` selecting the generators to be replaced by
/// complementary products. The canonical sets produced by [`selection_set`]
/// always have cardinality divisible by 4, which is what the sign-flip
/// transform requires.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelectionSet {
    k: u32,
    indices: Vec<usize>,
}

impl SelectionSet {
    pub fn new(k: u32, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.iter().any(|&j| j == 0 || j > k as usize) {
            return Err(Error::domain(format!("selection indices must lie in 1..={k}")));
        }
        Ok(SelectionSet { k, indices })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }
}

/// The residue-dependent selection set:
/// `k ≡ 7 (mod 8)`: odd indices; `k ≡ 1`: even indices; `k ≡ 3`: odd
/// indices ≥ 5; `k ≡ 5`: even indices together with 1 and 3.
pub fn selection_set(k: u32) -> Result<SelectionSet> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be a positive odd integer, got {k}")));
    }
    let all = 1..=(k as usize);
    let indices: Vec<usize> = match k % 8 {
        7 => all.filter(|j| j % 2 == 1).collect(),
        1 => all.filter(|j| j % 2 == 0).collect(),
        3 => all.filter(|j| j % 2 == 1 && *j >= 5).collect(),
        5 => all.filter(|j| j % 2 == 0 || *j <= 3).collect(),
        _ => unreachable!(),
    };
    SelectionSet::new(k, indices)
}

fn i_power(m: usize) -> Dyadic {
    match m % 4 {
        0 => Dyadic::one(),
        1 => Dyadic::i(),
        2 => -Dyadic::one(),
        _ => -Dyadic::i(),
    }
}

/// Replace each selected generator `G_i` by the phased product of the other
/// selected generators in increasing index order. Preconditions: `|S|`
/// divisible by 4, and the selected generators share a definite uniform
/// sign under at least one of the two involutions.
pub fn tilde_transform(
    family: &CliffordFamily,
    selection: &SelectionSet,
    phase: PhaseConvention,
) -> Result<CliffordFamily> {
    tilde_with_provenance(family, selection, phase, Provenance::Custom)
}

fn tilde_with_provenance(
    family: &CliffordFamily,
    selection: &SelectionSet,
    phase: PhaseConvention,
    provenance: Provenance,
) -> Result<CliffordFamily> {
    if selection.k() != family.k() {
        return Err(Error::domain(format!(
            "selection set is for k = {} but the family has k = {}",
            selection.k(),
            family.k()
        )));
    }
    if !selection.len().is_multiple_of(4) {
        return Err(Error::contract(format!(
            "selection cardinality {} is not divisible by 4",
            selection.len()
        )));
    }
    if selection.is_empty() {
        return Ok(CliffordFamily::from_parts(
            family.k(),
            family.generators().to_vec(),
            provenance,
        ));
    }

    let uniform = |kind: InvolutionKind| {
        let mut signs =
            selection.indices().iter().map(|&j| involution_sign(kind, family.generator(j)));
        let first = signs.next().unwrap();
        first != InvolutionSign::Indefinite && signs.all(|s| s == first)
    };
    if !uniform(InvolutionKind::Transpose) && !uniform(InvolutionKind::SharpTranspose) {
        return Err(Error::contract(
            "selected generators do not share a uniform sign under either involution",
        ));
    }

    let mut gens = family.generators().to_vec();
    for &i in selection.indices() {
        let mut prod = ExactMatrix::identity(family.size());
        let mut factors = 0usize;
        for &j in selection.indices() {
            if j != i {
                prod = prod.mul(family.generator(j))?;
                factors += 1;
            }
        }
        let scale = match phase {
            PhaseConvention::PerFactorI => i_power(factors),
            PhaseConvention::SingleI => Dyadic::i(),
        };
        gens[i - 1] = prod.scale(scale);
    }
    Ok(CliffordFamily::from_parts(family.k(), gens, provenance))
}

/// The symmetry-adapted family: standard family transformed along the
/// residue-appropriate selection set. For `k = 1` the selection set of its
/// residue class is empty, so the standard family is returned unchanged.
pub fn upsilon(k: u32, phase: PhaseConvention) -> Result<CliffordFamily> {
    let family = standard_gamma(k)?;
    let selection = selection_set(k)?;
    tilde_with_provenance(&family, &selection, phase, Provenance::Upsilon)
}

/// Per-generator signs under both involutions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymmetryAudit {
    pub transpose: Vec<InvolutionSign>,
    pub sharp_transpose: Vec<InvolutionSign>,
}

impl SymmetryAudit {
    pub fn of(family: &CliffordFamily) -> Self {
        let sign =
            |kind| family.generators().iter().map(|g| involution_sign(kind, g)).collect::<Vec<_>>();
        SymmetryAudit {
            transpose: sign(InvolutionKind::Transpose),
            sharp_transpose: sign(InvolutionKind::SharpTranspose),
        }
    }

    pub fn signs(&self, kind: InvolutionKind) -> &[InvolutionSign] {
        match kind {
            InvolutionKind::Transpose => &self.transpose,
            InvolutionKind::SharpTranspose => &self.sharp_transpose,
        }
    }

    /// True when every generator carries the given sign under `kind`.
    pub fn is_uniform(&self, kind: InvolutionKind, sign: InvolutionSign) -> bool {
        self.signs(kind).iter().all(|s| *s == sign)
    }
}

/// Exact booleans for every defining relation plus the symmetry audit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub self_adjoint: Vec<bool>,
    pub unitary: Vec<bool>,
    /// `anticommutation[i][j]` is the exact check
    /// `G_i G_j + G_j G_i = 2 δ_ij I`.
    pub anticommutation: Vec<Vec<bool>>,
    pub audit: SymmetryAudit,
}

impl VerificationReport {
    pub fn relations_hold(&self) -> bool {
        self.self_adjoint.iter().all(|&b| b)
            && self.unitary.iter().all(|&b| b)
            && self.anticommutation.iter().flatten().all(|&b| b)
    }

    /// Human-readable name of the first failing relation, if any.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(i) = self.self_adjoint.iter().position(|&b| !b) {
            return Some(format!("generator {} is not self-adjoint", i + 1));
        }
        if let Some(i) = self.unitary.iter().position(|&b| !b) {
            return Some(format!("generator {} is not unitary", i + 1));
        }
        for (i, row) in self.anticommutation.iter().enumerate() {
            if let Some(j) = row.iter().position(|&b| !b) {
                return Some(format!(
                    "anticommutation fails for generators ({}, {})",
                    i + 1,
                    j + 1
                ));
            }
        }
        None
    }
}

/// Check every defining relation of the family exactly and audit the
/// involution signs. Never errs; failures are carried in the report.
pub fn verify_clifford(family: &CliffordFamily) -> VerificationReport {
    let gens = family.generators();
    let n = family.size();
    let id = ExactMatrix::identity(n);
    let two_id = id.scale(Dyadic::integer(2));

    let self_adjoint = gens.iter().map(|g| g.is_self_adjoint()).collect();
    let unitary = gens.iter().map(|g| g.is_unitary()).collect();

    let mut anticommutation = vec![vec![false; gens.len()]; gens.len()];
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let sum = gens[i]
                .mul(&gens[j])
                .and_then(|a| gens[j].mul(&gens[i]).and_then(|b| a.add(&b)))
                .expect("family generators share one size");
            let ok = if i == j { sum == two_id } else { sum.is_zero() };
            anticommutation[i][j] = ok;
            anticommutation[j][i] = ok;
        }
    }

    VerificationReport { self_adjoint, unitary, anticommutation, audit: SymmetryAudit::of(family) }
}

/// Expected transpose sign of the i-th standard generator (1-based):
/// `(-1)^(i+1)`.
pub fn standard_transpose_sign(i: usize) -> InvolutionSign {
    if i % 2 == 1 {
        InvolutionSign::Plus
    } else {
        InvolutionSign::Minus
    }
}

/// Expected sharp-transpose sign of the i-th standard generator (1-based):
/// minus for `i <= 3`, `(-1)^(i+1)` otherwise.
pub fn standard_sharp_sign(i: usize) -> InvolutionSign {
    if i <= 3 {
        InvolutionSign::Minus
    } else {
        standard_transpose_sign(i)
    }
}

/// The uniform sign the adapted family must carry, per residue class of
/// `k` mod 8: (transpose, -) for 7, (transpose, +) for 1, (sharp, -) for 3,
/// (sharp, +) for 5.
pub fn upsilon_uniform_sign(k: u32) -> Result<(InvolutionKind, InvolutionSign)> {
    if k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be odd, got {k}")));
    }
    Ok(match k % 8 {
        7 => (InvolutionKind::Transpose, InvolutionSign::Minus),
        1 => (InvolutionKind::Transpose, InvolutionSign::Plus),
        3 => (InvolutionKind::SharpTranspose, InvolutionSign::Minus),
        5 => (InvolutionKind::SharpTranspose, InvolutionSign::Plus),
        _ => unreachable!(),
    })
}

/// Serialization container for a family: metadata header plus the
/// generator matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub k: u32,
    pub n: usize,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_convention: Option<PhaseConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub generators: Vec<ExactMatrix>,
}

/// Note attached to adapted families about the two admissible phase
/// placements.
pub const PHASE_NOTE: &str = "generator phases depend on the configured convention \
(an i per product factor vs a single leading i); the variants differ by per-generator \
signs only and have identical symmetry audits";

impl FamilyDocument {
    pub fn from_family(family: &CliffordFamily, phase: Option<PhaseConvention>) -> Self {
        FamilyDocument {
            k: family.k(),
            n: family.size(),
            provenance: family.provenance(),
            phase_convention: phase,
            note: (family.provenance() == Provenance::Upsilon).then(|| PHASE_NOTE.to_string()),
            generators: family.generators().to_vec(),
        }
    }

    /// Rebuild a family without validating the relations (verification is
    /// the caller's job; corrupted documents must load so they can fail).
    pub fn into_family_unchecked(self) -> Result<CliffordFamily> {
        let n = check_k(self.k)?;
        if self.generators.len() != self.k as usize {
            return Err(Error::domain(format!(
                "document declares k = {} but carries {} generators",
                self.k,
                self.generators.len()
            )));
        }
        if self.generators.iter().any(|g| g.size() != n) {
            return Err(Error::dim(format!("generators must have size {n} for k = {}", self.k)));
        }
        Ok(CliffordFamily::from_parts(self.k, self.generators, self.provenance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma3() -> [ExactMatrix; 3] {
        [
            ExactMatrix::from_gauss([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
            ExactMatrix::from_gauss([[(0, 0), (0, 1)], [(0, -1), (0, 0)]]),
            ExactMatrix::from_gauss([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
        ]
    }

    #[test]
    fn base_cases_match_the_printed_matrices() {
        let f1 = standard_gamma(1).unwrap();
        assert_eq!(f1.generators(), &[ExactMatrix::identity(1)]);

        let f3 = standard_gamma(3).unwrap();
        assert_eq!(f3.generators(), &gamma3());
    }

    #[test]
    fn induction_step_hand_check_k5() {
        // first generator of the k=5 family is the off-diagonal embedding of
        // [[0,1],[1,0]]: ones at (1,4),(2,3),(3,2),(4,1) in 1-based indexing
        let f5 = standard_gamma(5).unwrap();
        let g1 = f5.generator(1);
        let expected = ExactMatrix::from_gauss([
            [(0, 0), (0, 0), (0, 0), (1, 0)],
            [(0, 0), (0, 0), (1, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(1, 0), (0, 0), (0, 0), (0, 0)],
        ]);
        assert_eq!(g1, &expected);
    }

    #[test]
    fn gamma_products_hand_checked() {
        let [g1, g2, g3] = gamma3();
        // g1*g2 = [[-i,0],[0,i]]
        let p = g1.mul(&g2).unwrap();
        assert_eq!(p, ExactMatrix::from_gauss([[(0, -1), (0, 0)], [(0, 0), (0, 1)]]));
        // squares are the identity
        assert_eq!(g1.mul(&g1).unwrap(), ExactMatrix::identity(2));
        assert_eq!(g3.mul(&g3).unwrap(), ExactMatrix::identity(2));
    }

    #[test]
    fn transpose_signs_match_the_parity_rule() {
        let f = standard_gamma(5).unwrap();
        let audit = SymmetryAudit::of(&f);
        for i in 1..=5 {
            assert_eq!(audit.transpose[i - 1], standard_transpose_sign(i), "index {i}");
            assert_eq!(audit.sharp_transpose[i - 1], standard_sharp_sign(i), "index {i}");
        }
    }

    #[test]
    fn rejects_even_and_oversized_k() {
        assert!(matches!(standard_gamma(2), Err(Error::Domain(_))));
        assert!(matches!(standard_gamma(0), Err(Error::Domain(_))));
        assert!(matches!(standard_gamma(K_LIMIT + 2), Err(Error::Resource(_))));
    }

    #[test]
    fn selection_sets_by_residue() {
        assert_eq!(selection_set(7).unwrap().indices(), &[1, 3, 5, 7]);
        assert_eq!(selection_set(3).unwrap().indices(), &[] as &[usize]);
        assert_eq!(selection_set(5).unwrap().indices(), &[1, 2, 3, 4]);
        assert_eq!(selection_set(9).unwrap().indices(), &[2, 4, 6, 8]);
        assert_eq!(selection_set(1).unwrap().indices(), &[] as &[usize]);
        assert_eq!(selection_set(11).unwrap().indices(), &[5, 7, 9, 11]);
        for k in (1..=19).step_by(2) {
            assert_eq!(selection_set(k).unwrap().len() % 4, 0, "k = {k}");
        }
    }

    #[test]
    fn empty_selection_leaves_family_unchanged() {
        let f = standard_gamma(3).unwrap();
        let s = SelectionSet::new(3, vec![]).unwrap();
        let t = tilde_transform(&f, &s, PhaseConvention::PerFactorI).unwrap();
        assert_eq!(t.generators(), f.generators());
    }

    #[test]
    fn bad_cardinality_is_a_precondition_error() {
        let f = standard_gamma(5).unwrap();
        let s = SelectionSet::new(5, vec![1, 3]).unwrap();
        assert!(matches!(
            tilde_transform(&f, &s, PhaseConvention::PerFactorI),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn phase_conventions_differ_by_sign_only() {
        let f = standard_gamma(7).unwrap();
        let s = selection_set(7).unwrap();
        let per = tilde_transform(&f, &s, PhaseConvention::PerFactorI).unwrap();
        let single = tilde_transform(&f, &s, PhaseConvention::SingleI).unwrap();
        // |S \ {i}| = 3, so the per-factor phase i^3 = -i differs from the
        // single leading i by a sign
        for &i in s.indices() {
            assert_eq!(per.generator(i), &single.generator(i).neg());
        }
        for i in 1..=7 {
            if !s.contains(i) {
                assert_eq!(per.generator(i), single.generator(i));
            }
        }
        assert_eq!(SymmetryAudit::of(&per), SymmetryAudit::of(&single));
    }

    #[test]
    fn single_i_product_hand_check() {
        // for S = {1,3,5,7}, the transformed first generator with a single
        // leading i is i * G3 * G5 * G7
        let f = standard_gamma(7).unwrap();
        let s = selection_set(7).unwrap();
        let t = tilde_transform(&f, &s, PhaseConvention::SingleI).unwrap();
        let expected = f
            .generator(3)
            .mul(f.generator(5))
            .unwrap()
            .mul(f.generator(7))
            .unwrap()
            .scale(Dyadic::i());
        assert_eq!(t.generator(1), &expected);
    }

    #[test]
    fn adapted_families_verify_and_carry_uniform_signs() {
        for k in [1u32, 3, 5, 7, 9, 11] {
            let u = upsilon(k, PhaseConvention::PerFactorI).unwrap();
            let report = verify_clifford(&u);
            assert!(report.relations_hold(), "k = {k}: {:?}", report.first_failure());
            let (kind, sign) = upsilon_uniform_sign(k).unwrap();
            assert!(
                report.audit.is_uniform(kind, sign),
                "k = {k}: audit {:?}",
                report.audit.signs(kind)
            );
        }
    }

    #[test]
    fn negating_a_generator_preserves_all_relations() {
        let f = upsilon(5, PhaseConvention::PerFactorI).unwrap().with_negated(2);
        let report = verify_clifford(&f);
        assert!(report.relations_hold());
        let (kind, sign) = upsilon_uniform_sign(5).unwrap();
        assert!(report.audit.is_uniform(kind, sign));
    }

    #[test]
    fn custom_constructor_validates_relations() {
        let [g1, g2, g3] = gamma3();
        assert!(CliffordFamily::new(3, vec![g1.clone(), g2, g3], Provenance::Custom).is_ok());
        let bad = vec![g1.clone(), g1.clone(), g1];
        assert!(matches!(CliffordFamily::new(3, bad, Provenance::Custom), Err(Error::Contract(_))));
    }

    #[test]
    fn family_document_round_trip() {
        let f = upsilon(5, PhaseConvention::SingleI).unwrap();
        let doc = FamilyDocument::from_family(&f, Some(PhaseConvention::SingleI));
        let text = serde_json::to_string(&doc).unwrap();
        let back: FamilyDocument = serde_json::from_str(&text).unwrap();
        let g = back.into_family_unchecked().unwrap();
        assert_eq!(g.generators(), f.generators());
        assert_eq!(g.provenance(), Provenance::Upsilon);
    }
}
