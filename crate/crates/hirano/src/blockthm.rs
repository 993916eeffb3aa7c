//! Mechanical hypothesis checkers, proof-witness constructors, and
//! conclusion verifiers for the block-matrix perturbation statements.
//!
//! Every statement is identified by a [`TheoremId`]. For a concrete
//! instance, [`check_hypotheses`] evaluates each hypothesis exactly and
//! attaches the residual matrix, [`verify_conclusion`] tests the claimed
//! invertibility class of the assembled target and produces a full
//! certificate on success, and [`witness_split`] rebuilds the summand
//! decomposition used in the corresponding proof together with its side
//! conditions. A conclusion failure is reported as data, never raised: it
//! is counterexample evidence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gendrazin::{
    drazin_inverse, hirano_inverse, is_nilpotent, strongly_drazin_inverse, DrazinData,
    HiranoCert, StrongDrazinCert,
};
use crate::ratmat::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    L2_1,
    L2_2,
    L2_3,
    L2_4,
    L2_5,
    L2_6,
    T2_7,
    C2_8,
    C2_9,
    T2_10,
    C2_11,
    L3_1,
    L3_2,
    L3_3,
    T3_4,
    C3_5,
    T3_7,
    C3_8,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::L2_1,
        TheoremId::L2_2,
        TheoremId::L2_3,
        TheoremId::L2_4,
        TheoremId::L2_5,
        TheoremId::L2_6,
        TheoremId::T2_7,
        TheoremId::C2_8,
        TheoremId::C2_9,
        TheoremId::T2_10,
        TheoremId::C2_11,
        TheoremId::L3_1,
        TheoremId::L3_2,
        TheoremId::L3_3,
        TheoremId::T3_4,
        TheoremId::C3_5,
        TheoremId::T3_7,
        TheoremId::C3_8,
    ];

    /// Number of matrices an instance must carry.
    pub fn arity(self) -> usize {
        match self {
            TheoremId::L2_1 | TheoremId::L2_2 | TheoremId::L3_1 | TheoremId::L3_3 => 2,
            TheoremId::L2_3 | TheoremId::L2_4 => 2,
            TheoremId::L2_5 => 3,
            _ => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::L2_1 => "L2_1",
            TheoremId::L2_2 => "L2_2",
            TheoremId::L2_3 => "L2_3",
            TheoremId::L2_4 => "L2_4",
            TheoremId::L2_5 => "L2_5",
            TheoremId::L2_6 => "L2_6",
            TheoremId::T2_7 => "T2_7",
            TheoremId::C2_8 => "C2_8",
            TheoremId::C2_9 => "C2_9",
            TheoremId::T2_10 => "T2_10",
            TheoremId::C2_11 => "C2_11",
            TheoremId::L3_1 => "L3_1",
            TheoremId::L3_2 => "L3_2",
            TheoremId::L3_3 => "L3_3",
            TheoremId::T3_4 => "T3_4",
            TheoremId::C3_5 => "C3_5",
            TheoremId::T3_7 => "T3_7",
            TheoremId::C3_8 => "C3_8",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace(['.', '-'], "_");
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == norm)
            .ok_or_else(|| Error::UnknownTheoremId(s.to_string()))
    }
}

/// Which literal reading of a statement to check. `Default` additionally
/// requires `A` strongly Drazin invertible in C2_9 (matching the theorem it
/// is derived from); `AsStated` checks the statement exactly as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Default,
    AsStated,
}

/// The four blocks plus the assembled matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInstance {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
    pub m: Matrix,
}

impl BlockInstance {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<Self> {
        let m = Matrix::block_assemble(&a, &b, &c, &d)?;
        Ok(Self { a, b, c, d, m })
    }
}

/// A concrete instance at the arity the theorem expects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    /// `(P, Q)` or `(A, B)` statements.
    Two(Matrix, Matrix),
    /// `(A, B, C)` statements.
    Three(Matrix, Matrix, Matrix),
    /// Full four-block statements.
    Four(BlockInstance),
}

impl Instance {
    pub fn arity(&self) -> usize {
        match self {
            Instance::Two(..) => 2,
            Instance::Three(..) => 3,
            Instance::Four(..) => 4,
        }
    }

    pub fn matrices(&self) -> Vec<&Matrix> {
        match self {
            Instance::Two(a, b) => vec![a, b],
            Instance::Three(a, b, c) => vec![a, b, c],
            Instance::Four(bi) => vec![&bi.a, &bi.b, &bi.c, &bi.d],
        }
    }
}

fn check_arity(id: TheoremId, inst: &Instance) -> Result<()> {
    if id.arity() != inst.arity() {
        return Err(Error::ArityMismatch {
            id: id.name().to_string(),
            expected: id.arity(),
            got: inst.arity(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisKind {
    /// Residual must be exactly zero.
    Annihilation,
    /// Residual must be nilpotent (invertibility-class hypotheses).
    Nilpotency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub formula: String,
    pub kind: HypothesisKind,
    pub holds: bool,
    pub residual: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub id: TheoremId,
    pub hypotheses: Vec<Hypothesis>,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis_names(&self) -> Vec<&str> {
        self.hypotheses.iter().map(|h| h.name.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCondition {
    pub name: String,
    pub holds: bool,
    pub residual: Matrix,
}

/// The proof's summand decomposition of a target matrix, with the side
/// conditions the proof asserts along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSplit {
    /// The matrix being decomposed (for flip proofs this is the flipped
    /// matrix, for Cline proofs the companion matrix).
    pub target: Matrix,
    pub summands: Vec<Matrix>,
    pub side_conditions: Vec<SideCondition>,
}

impl WitnessSplit {
    pub fn all_side_conditions_hold(&self) -> bool {
        self.side_conditions.iter().all(|s| s.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConclusionCert {
    Hirano(HiranoCert),
    StrongDrazin(StrongDrazinCert),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConclusionClass {
    Hirano,
    StrongDrazin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    HypothesesFail,
    ConclusionFail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub hypothesis_report: HypothesisReport,
    pub target: Matrix,
    pub conclusion_class: ConclusionClass,
    /// `T - T^2` or `T - T^3` for the target; must be nilpotent.
    pub conclusion_residual: Matrix,
    pub conclusion: Option<ConclusionCert>,
    pub witness: Option<WitnessSplit>,
    pub verdict: Verdict,
}

// ---------------------------------------------------------------------------
// hypothesis evaluation

struct HypBuilder {
    hyps: Vec<Hypothesis>,
}

impl HypBuilder {
    fn new() -> Self {
        Self { hyps: Vec::new() }
    }

    fn ann(&mut self, name: &str, formula: &str, residual: Matrix) {
        self.hyps.push(Hypothesis {
            name: name.to_string(),
            formula: formula.to_string(),
            kind: HypothesisKind::Annihilation,
            holds: residual.is_zero(),
            residual,
        });
    }

    fn nilpotency(&mut self, name: &str, formula: &str, residual: Matrix) -> Result<()> {
        let holds = is_nilpotent(&residual)?.is_some();
        self.hyps.push(Hypothesis {
            name: name.to_string(),
            formula: formula.to_string(),
            kind: HypothesisKind::Nilpotency,
            holds,
            residual,
        });
        Ok(())
    }

    /// `block` strongly Drazin invertible, i.e. `block - block^2` nilpotent.
    fn class_sd(&mut self, label: &str, block: &Matrix) -> Result<()> {
        let res = block.sub(&block.power(2)?)?;
        self.nilpotency(
            &format!("class-{label}"),
            &format!("{label} - {label}^2 nilpotent (strongly Drazin invertible)"),
            res,
        )
    }

    /// `block` Hirano invertible, i.e. `block - block^3` nilpotent.
    fn class_hirano(&mut self, label: &str, block: &Matrix) -> Result<()> {
        let res = block.sub(&block.power(3)?)?;
        self.nilpotency(
            &format!("class-{label}"),
            &format!("{label} - {label}^3 nilpotent (Hirano invertible)"),
            res,
        )
    }

    fn class_nilpotent(&mut self, label: &str, block: &Matrix) -> Result<()> {
        self.nilpotency(
            &format!("nilpotent-{label}"),
            &format!("{label} nilpotent"),
            block.clone(),
        )
    }
}

fn two<'a>(inst: &'a Instance) -> (&'a Matrix, &'a Matrix) {
    match inst {
        Instance::Two(a, b) => (a, b),
        _ => unreachable!("arity checked"),
    }
}

fn three<'a>(inst: &'a Instance) -> (&'a Matrix, &'a Matrix, &'a Matrix) {
    match inst {
        Instance::Three(a, b, c) => (a, b, c),
        _ => unreachable!("arity checked"),
    }
}

fn four<'a>(inst: &'a Instance) -> &'a BlockInstance {
    match inst {
        Instance::Four(bi) => bi,
        _ => unreachable!("arity checked"),
    }
}

/// Evaluates every hypothesis of `id` on the instance, exactly.
pub fn check_hypotheses(
    id: TheoremId,
    inst: &Instance,
    profile: Profile,
) -> Result<HypothesisReport> {
    check_arity(id, inst)?;
    let mut hb = HypBuilder::new();
    match id {
        TheoremId::L2_1 => {
            let (p, q) = two(inst);
            hb.class_sd("P", p)?;
            hb.class_sd("Q", q)?;
            hb.ann("PQ", "PQ = 0", p.mul(q)?);
        }
        TheoremId::L2_2 => {
            let (p, q) = two(inst);
            hb.class_hirano("P", p)?;
            hb.class_hirano("Q", q)?;
            hb.ann("PQP", "PQP = 0", p.mul(q)?.mul(p)?);
            hb.ann("PQ^2", "PQ^2 = 0", p.mul(q)?.mul(q)?);
        }
        TheoremId::L2_3 => {
            let (a, b) = two(inst);
            hb.class_sd("A", a)?;
            hb.class_sd("B", b)?;
            let ad = drazin_inverse(a)?.dinv;
            hb.ann("A^DBA^D", "A^D B A^D = 0", ad.mul(b)?.mul(&ad)?);
        }
        TheoremId::L2_4 => {
            let (a, b) = two(inst);
            hb.class_sd("A", a)?;
            hb.class_sd("B", b)?;
            let dz = drazin_inverse(a)?;
            hb.ann("A^DBA^D", "A^D B A^D = 0", dz.dinv.mul(b)?.mul(&dz.dinv)?);
            hb.ann(
                "BA^piB",
                "B A^pi B = 0",
                b.mul(&dz.core_complement)?.mul(b)?,
            );
            hb.ann(
                "BAA^pi",
                "B A A^pi = 0",
                b.mul(a)?.mul(&dz.core_complement)?,
            );
        }
        TheoremId::L2_5 => {
            let (a, b, c) = three(inst);
            let bc = b.mul(c)?;
            hb.class_sd("A", a)?;
            hb.class_sd("BC", &bc)?;
            let dz = drazin_inverse(a)?;
            hb.ann("A^DBCA^D", "A^D BC A^D = 0", dz.dinv.mul(&bc)?.mul(&dz.dinv)?);
            hb.ann(
                "BCA^piBC",
                "BC A^pi BC = 0",
                bc.mul(&dz.core_complement)?.mul(&bc)?,
            );
            hb.ann(
                "BCA^piA",
                "BC A^pi A = 0",
                bc.mul(&dz.core_complement)?.mul(a)?,
            );
        }
        TheoremId::L2_6 => {
            let bi = four(inst);
            let bc = bi.b.mul(&bi.c)?;
            hb.class_sd("A", &bi.a)?;
            hb.class_sd("D", &bi.d)?;
            hb.class_sd("BC", &bc)?;
            let dz = drazin_inverse(&bi.a)?;
            hb.ann("ABC", "A BC = 0", bi.a.mul(&bc)?);
            hb.ann("BCA^pi", "BC A^pi = 0", bc.mul(&dz.core_complement)?);
            hb.ann("BDC", "BDC = 0", bi.b.mul(&bi.d)?.mul(&bi.c)?);
            hb.ann("BD^2", "BD^2 = 0", bi.b.mul(&bi.d.power(2)?)?);
        }
        TheoremId::T2_7 => {
            let bi = four(inst);
            hb.class_sd("A", &bi.a)?;
            hb.class_sd("D", &bi.d)?;
            let dz = drazin_inverse(&bi.d)?;
            hb.ann("BDD^D", "B D D^D = 0", bi.b.mul(&dz.core_proj)?);
            let dpic = dz.core_complement.mul(&bi.c)?;
            hb.ann("D^piCB", "D^pi C B = 0", dpic.mul(&bi.b)?);
            hb.ann("D^piCA", "D^pi C A = 0", dpic.mul(&bi.a)?);
        }
        TheoremId::C2_8 => {
            let bi = four(inst);
            hb.class_sd("A", &bi.a)?;
            hb.class_sd("D", &bi.d)?;
            hb.ann("BD", "BD = 0", bi.b.mul(&bi.d)?);
            let dz = drazin_inverse(&bi.d)?;
            hb.ann("D^piC", "D^pi C = 0", dz.core_complement.mul(&bi.c)?);
        }
        TheoremId::C2_9 => {
            let bi = four(inst);
            if profile == Profile::Default {
                // The literal statement omits any class hypothesis on A; the
                // default profile restores the one T2_7 needs.
                hb.class_sd("A", &bi.a)?;
            }
            hb.class_sd("D", &bi.d)?;
            hb.ann("CB", "CB = 0", bi.c.mul(&bi.b)?);
            hb.ann("BD", "BD = 0", bi.b.mul(&bi.d)?);
            hb.ann("CA", "CA = 0", bi.c.mul(&bi.a)?);
        }
        TheoremId::T2_10 => {
            let bi = four(inst);
            hb.class_sd("A", &bi.a)?;
            hb.class_sd("D", &bi.d)?;
            let dz = drazin_inverse(&bi.a)?;
            let adb = dz.dinv.mul(&bi.b)?;
            let apib = dz.core_complement.mul(&bi.b)?;
            hb.ann("A^DBCA^D", "A^D B C A^D = 0", adb.mul(&bi.c)?.mul(&dz.dinv)?);
            hb.ann("A^DBD", "A^D B D = 0", adb.mul(&bi.d)?);
            hb.ann("A^piBC", "A^pi B C = 0", apib.mul(&bi.c)?);
            hb.ann("A^piBD", "A^pi B D = 0", apib.mul(&bi.d)?);
        }
        TheoremId::C2_11 => {
            let bi = four(inst);
            hb.class_sd("A", &bi.a)?;
            hb.class_sd("D", &bi.d)?;
            let dz = drazin_inverse(&bi.d)?;
            let ddc = dz.dinv.mul(&bi.c)?;
            let dpic = dz.core_complement.mul(&bi.c)?;
            hb.ann("D^DCBD^D", "D^D C B D^D = 0", ddc.mul(&bi.b)?.mul(&dz.dinv)?);
            hb.ann("D^DCA", "D^D C A = 0", ddc.mul(&bi.a)?);
            hb.ann("D^piCB", "D^pi C B = 0", dpic.mul(&bi.b)?);
            hb.ann("D^piCA", "D^pi C A = 0", dpic.mul(&bi.a)?);
        }
        TheoremId::L3_1 => {
            let (a, b) = two(inst);
            hb.class_nilpotent("A", a)?;
            hb.class_hirano("B", b)?;
            let dz = drazin_inverse(b)?;
            hb.ann("AB^H", "A B^H = 0", a.mul(&dz.dinv)?);
            hb.ann(
                "B^piAB",
                "B^pi A B = 0",
                dz.core_complement.mul(a)?.mul(b)?,
            );
        }
        TheoremId::L3_2 => {
            let bi = four(inst);
            hb.class_hirano("A", &bi.a)?;
            hb.class_hirano("D", &bi.d)?;
            hb.ann("B=0", "B = 0 (lower triangular form)", bi.b.clone());
        }
        TheoremId::L3_3 => {
            let (a, b) = two(inst);
            hb.class_hirano("A", a)?;
            hb.class_hirano("B", b)?;
            let za = drazin_inverse(a)?;
            let zb = drazin_inverse(b)?;
            hb.ann("A^HB", "A^H B = 0", za.dinv.mul(b)?);
            hb.ann("AB^H", "A B^H = 0", a.mul(&zb.dinv)?);
            hb.ann(
                "B^piABA^pi",
                "B^pi A B A^pi = 0",
                zb.core_complement
                    .mul(a)?
                    .mul(b)?
                    .mul(&za.core_complement)?,
            );
        }
        TheoremId::T3_4 => {
            let bi = four(inst);
            hb.class_hirano("A", &bi.a)?;
            hb.class_hirano("D", &bi.d)?;
            let za = drazin_inverse(&bi.a)?;
            let zd = drazin_inverse(&bi.d)?;
            hb.ann("BD^H", "B D^H = 0", bi.b.mul(&zd.dinv)?);
            let bc = bi.b.mul(&bi.c)?;
            hb.ann("A^piBC", "A^pi B C = 0", za.core_complement.mul(&bc)?);
            hb.ann("A^HBC", "A^H B C = 0", za.dinv.mul(&bc)?);
            let ddpi = bi.d.mul(&zd.core_complement)?;
            let inner = ddpi.sub(&bi.c.mul(&za.dinv)?.mul(&bi.b)?)?;
            hb.ann(
                "(DD^pi-CA^HB)C",
                "(D D^pi - C A^H B) C = 0",
                inner.mul(&bi.c)?,
            );
        }
        TheoremId::C3_5 => {
            let bi = four(inst);
            hb.class_hirano("A", &bi.a)?;
            hb.class_hirano("D", &bi.d)?;
            let zd = drazin_inverse(&bi.d)?;
            hb.ann("BD^H", "B D^H = 0", bi.b.mul(&zd.dinv)?);
            hb.ann("BC", "BC = 0", bi.b.mul(&bi.c)?);
            hb.ann(
                "DD^piC",
                "D D^pi C = 0",
                bi.d.mul(&zd.core_complement)?.mul(&bi.c)?,
            );
        }
        TheoremId::T3_7 => {
            let bi = four(inst);
            hb.class_hirano("A", &bi.a)?;
            hb.class_hirano("D", &bi.d)?;
            let zd = drazin_inverse(&bi.d)?;
            hb.ann("AB", "AB = 0", bi.a.mul(&bi.b)?);
            hb.ann("BD^H", "B D^H = 0", bi.b.mul(&zd.dinv)?);
            hb.ann(
                "D^piCB",
                "D^pi C B = 0",
                zd.core_complement.mul(&bi.c)?.mul(&bi.b)?,
            );
        }
        TheoremId::C3_8 => {
            let bi = four(inst);
            hb.class_hirano("A", &bi.a)?;
            hb.class_hirano("D", &bi.d)?;
            let za = drazin_inverse(&bi.a)?;
            hb.ann("CB", "CB = 0", bi.c.mul(&bi.b)?);
            hb.ann("CA", "CA = 0", bi.c.mul(&bi.a)?);
            hb.ann(
                "A^HBC",
                "A^H B C = 0",
                za.dinv.mul(&bi.b)?.mul(&bi.c)?,
            );
        }
    }
    Ok(HypothesisReport { id, hypotheses: hb.hyps })
}

// ---------------------------------------------------------------------------
// conclusion

/// The matrix whose invertibility class the statement asserts, plus the
/// class itself.
pub fn conclusion_target(id: TheoremId, inst: &Instance) -> Result<(Matrix, ConclusionClass)> {
    check_arity(id, inst)?;
    Ok(match id {
        TheoremId::L2_1 => {
            let (p, q) = two(inst);
            (p.add(q)?, ConclusionClass::StrongDrazin)
        }
        TheoremId::L2_2 => {
            let (p, q) = two(inst);
            (p.add(q)?, ConclusionClass::Hirano)
        }
        TheoremId::L2_3 => {
            let (a, b) = two(inst);
            let dz = drazin_inverse(a)?;
            let aae = a.mul(&dz.core_proj)?;
            let zero = Matrix::zero(a.rows(), b.cols());
            (
                Matrix::block_assemble(&aae, b, &dz.core_proj, &zero)?,
                ConclusionClass::StrongDrazin,
            )
        }
        TheoremId::L2_4 => {
            let (a, b) = two(inst);
            let eye = Matrix::identity(a.rows());
            let zero = Matrix::zero(eye.rows(), b.cols());
            (
                Matrix::block_assemble(a, b, &eye, &zero)?,
                ConclusionClass::Hirano,
            )
        }
        TheoremId::L2_5 => {
            let (a, b, c) = three(inst);
            let zero = Matrix::zero(c.rows(), b.cols());
            (
                Matrix::block_assemble(a, b, c, &zero)?,
                ConclusionClass::Hirano,
            )
        }
        TheoremId::L3_1 | TheoremId::L3_3 => {
            let (a, b) = two(inst);
            (a.add(b)?, ConclusionClass::Hirano)
        }
        _ => (four(inst).m.clone(), ConclusionClass::Hirano),
    })
}

/// Full report: hypotheses, conclusion class test with certificate, witness
/// split when the hypotheses hold.
pub fn verify_conclusion(id: TheoremId, inst: &Instance, profile: Profile) -> Result<TheoremReport> {
    let hypothesis_report = check_hypotheses(id, inst, profile)?;
    let (target, class) = conclusion_target(id, inst)?;
    let conclusion_residual = match class {
        ConclusionClass::Hirano => target.sub(&target.power(3)?)?,
        ConclusionClass::StrongDrazin => target.sub(&target.power(2)?)?,
    };
    let in_class = is_nilpotent(&conclusion_residual)?.is_some();
    let conclusion = if in_class {
        Some(match class {
            ConclusionClass::Hirano => ConclusionCert::Hirano(hirano_inverse(&target)?),
            ConclusionClass::StrongDrazin => {
                ConclusionCert::StrongDrazin(strongly_drazin_inverse(&target)?)
            }
        })
    } else {
        None
    };
    let witness = if hypothesis_report.all_hold() {
        Some(witness_split(id, inst, profile)?)
    } else {
        None
    };
    let verdict = if !hypothesis_report.all_hold() {
        Verdict::HypothesesFail
    } else if conclusion.is_some() {
        Verdict::Verified
    } else {
        Verdict::ConclusionFail
    };
    Ok(TheoremReport {
        id,
        hypothesis_report,
        target,
        conclusion_class: class,
        conclusion_residual,
        conclusion,
        witness,
        verdict,
    })
}

// ---------------------------------------------------------------------------
// witness splits

struct SideBuilder {
    sides: Vec<SideCondition>,
}

impl SideBuilder {
    fn new() -> Self {
        Self { sides: Vec::new() }
    }

    fn zero(&mut self, name: &str, residual: Matrix) {
        self.sides.push(SideCondition {
            name: name.to_string(),
            holds: residual.is_zero(),
            residual,
        });
    }

    fn nilpotent(&mut self, name: &str, residual: Matrix) -> Result<()> {
        let holds = is_nilpotent(&residual)?.is_some();
        self.sides.push(SideCondition { name: name.to_string(), holds, residual });
        Ok(())
    }
}

/// Rebuilds the summand decomposition the proof of `id` uses, with its side
/// conditions evaluated on the instance. Requires the hypotheses to hold.
pub fn witness_split(id: TheoremId, inst: &Instance, profile: Profile) -> Result<WitnessSplit> {
    let hyps = check_hypotheses(id, inst, profile)?;
    if !hyps.all_hold() {
        return Err(Error::HypothesesFail(id.name().to_string()));
    }
    let mut sb = SideBuilder::new();
    let (target, summands) = match id {
        TheoremId::L2_1 => {
            // Cline companion [[P, 0],[I, Q]]; its strong Drazin class
            // transfers to P + Q.
            let (p, q) = two(inst);
            let n = p.rows();
            let w = Matrix::block_assemble(p, &Matrix::zero(n, n), &Matrix::identity(n), q)?;
            sb.zero("PQ = 0", p.mul(q)?);
            sb.nilpotent("W - W^2 nilpotent, W = [[P,0],[I,Q]]", w.sub(&w.power(2)?)?)?;
            (p.add(q)?, vec![p.clone(), q.clone()])
        }
        TheoremId::L2_2 => {
            // Square of the Cline companion [[P, PQ],[I, Q]], split so the
            // first summand is nilpotent and annihilates the second from the
            // left.
            let (p, q) = two(inst);
            let pq = p.mul(q)?;
            let p2q = p.power(2)?.mul(q)?;
            let n = p.rows();
            let zero = Matrix::zero(n, n);
            let c = Matrix::block_assemble(&pq, &p2q, &zero, &pq)?;
            let d = Matrix::block_assemble(&p.power(2)?, &zero, &p.add(q)?, &q.power(2)?)?;
            sb.zero("CD = 0", c.mul(&d)?);
            sb.nilpotent("C nilpotent", c.clone())?;
            sb.nilpotent("D - D^2 nilpotent", d.sub(&d.power(2)?)?)?;
            (c.add(&d)?, vec![c, d])
        }
        TheoremId::L2_3 => {
            // Cline companion [[AA^e, I],[BA^e, 0]] = C + D from the proof.
            let (a, b) = two(inst);
            let dz = drazin_inverse(a)?;
            let aae = a.mul(&dz.core_proj)?;
            let bae = b.mul(&dz.core_proj)?;
            let n = a.rows();
            let eye = Matrix::identity(n);
            let zero = Matrix::zero(n, n);
            let companion = Matrix::block_assemble(&aae, &eye, &bae, &zero)?;
            let c = Matrix::block_assemble(&aae, &zero, &zero, &zero)?;
            let d = companion.sub(&c)?;
            sb.nilpotent("C - C^2 nilpotent", c.sub(&c.power(2)?)?)?;
            sb.zero("(D - D^2)^4 = 0", d.sub(&d.power(2)?)?.power(4)?);
            sb.zero("CDC^2 = 0", c.mul(&d)?.mul(&c.power(2)?)?);
            sb.zero("CDCD = 0", c.mul(&d)?.mul(&c)?.mul(&d)?);
            sb.zero("CD^2 = 0", c.mul(&d.power(2)?)?);
            (companion, vec![c, d])
        }
        TheoremId::L2_4 => {
            let (a, b) = two(inst);
            let dz = drazin_inverse(a)?;
            let n = a.rows();
            let zero = Matrix::zero(n, n);
            let aae = a.mul(&dz.core_proj)?;
            let aapi = a.mul(&dz.core_complement)?;
            let p = Matrix::block_assemble(&aae, b, &dz.core_proj, &zero)?;
            let q = Matrix::block_assemble(&aapi, &zero, &dz.core_complement, &zero)?;
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            sb.zero(
                "(Q - Q^3)^(k+1) = 0, k = ind(A)",
                q.sub(&q.power(3)?)?.power(dz.index_k + 1)?,
            );
            (p.add(&q)?, vec![p, q])
        }
        TheoremId::L2_5 => {
            // Transfer through Cline: the conditions of the anti-triangular
            // matrix [[A, BC],[I, 0]] with B replaced by BC.
            let (a, b, c) = three(inst);
            let bc = b.mul(c)?;
            let dz = drazin_inverse(a)?;
            let n = a.rows();
            let zero = Matrix::zero(n, n);
            let aae = a.mul(&dz.core_proj)?;
            let aapi = a.mul(&dz.core_complement)?;
            let p = Matrix::block_assemble(&aae, &bc, &dz.core_proj, &zero)?;
            let q = Matrix::block_assemble(&aapi, &zero, &dz.core_complement, &zero)?;
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            (p.add(&q)?, vec![p, q])
        }
        TheoremId::L2_6 => {
            let bi = four(inst);
            let zero_b = Matrix::zero(bi.a.rows(), bi.b.cols());
            let zero_c = Matrix::zero(bi.c.rows(), bi.a.cols());
            let p = Matrix::block_assemble(
                &bi.a,
                &bi.b,
                &bi.c,
                &Matrix::zero(bi.d.rows(), bi.d.cols()),
            )?;
            let q = Matrix::block_assemble(
                &Matrix::zero(bi.a.rows(), bi.a.cols()),
                &zero_b,
                &zero_c,
                &bi.d,
            )?;
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            (bi.m.clone(), vec![p, q])
        }
        TheoremId::T2_7 | TheoremId::C2_8 | TheoremId::C2_9 => {
            // C2_8 and C2_9 inherit the split used for T2_7.
            let bi = four(inst);
            let zd = drazin_inverse(&bi.d)?;
            let bdd = bi.b.mul(&zd.core_proj)?;
            let dpic = zd.core_complement.mul(&bi.c)?;
            let bdpi = bi.b.mul(&zd.core_complement)?;
            let ddc = zd.core_proj.mul(&bi.c)?;
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let zero_d = Matrix::zero(bi.d.rows(), bi.d.cols());
            let p = Matrix::block_assemble(&zero_a, &bdd, &dpic, &zero_d)?;
            let q = Matrix::block_assemble(&bi.a, &bdpi, &ddc, &bi.d)?;
            sb.zero("P^2 = 0", p.power(2)?);
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            // the L2_6-style conditions, applied to Q:
            sb.zero("A(BD^pi)(DD^DC) = 0", bi.a.mul(&bdpi)?.mul(&bi.d.mul(&ddc)?)?);
            sb.zero("(BD^pi)D^2 = 0", bdpi.mul(&bi.d.power(2)?)?);
            sb.zero(
                "(BD^pi)D(DD^DC) = 0",
                bdpi.mul(&bi.d)?.mul(&bi.d.mul(&ddc)?)?,
            );
            (bi.m.clone(), vec![p, q])
        }
        TheoremId::T2_10 => {
            let bi = four(inst);
            let za = drazin_inverse(&bi.a)?;
            let aadb = za.core_proj.mul(&bi.b)?;
            let apib = za.core_complement.mul(&bi.b)?;
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let zero_c = Matrix::zero(bi.c.rows(), bi.c.cols());
            let zero_d = Matrix::zero(bi.d.rows(), bi.d.cols());
            let p = Matrix::block_assemble(&bi.a, &aadb, &bi.c, &bi.d)?;
            let q = Matrix::block_assemble(&zero_a, &apib, &zero_c, &zero_d)?;
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            let a2ad = bi.a.power(2)?.mul(&za.dinv)?;
            let caad = bi.c.mul(&za.core_proj)?;
            let aapi = bi.a.mul(&za.core_complement)?;
            let capi = bi.c.mul(&za.core_complement)?;
            let p1 = Matrix::block_assemble(&a2ad, &aadb, &caad, &bi.d)?;
            let p2 = Matrix::block_assemble(&aapi, &zero_a, &capi, &zero_d)?;
            sb.zero("P2 P1 = 0", p2.mul(&p1)?);
            sb.nilpotent("(P2 - P2^3)^3 nilpotent", p2.sub(&p2.power(3)?)?.power(3)?)?;
            (bi.m.clone(), vec![p1, p2, q])
        }
        TheoremId::C2_11 => {
            // The proof flips to [[D, C],[B, A]] and splits that matrix.
            let bi = four(inst);
            let zd = drazin_inverse(&bi.d)?;
            let flipped = Matrix::block_assemble(&bi.d, &bi.c, &bi.b, &bi.a)?;
            let ddc = zd.core_proj.mul(&bi.c)?;
            let dpic = zd.core_complement.mul(&bi.c)?;
            let zero_d = Matrix::zero(bi.d.rows(), bi.d.cols());
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let p = Matrix::block_assemble(&bi.d, &ddc, &bi.b, &bi.a)?;
            let q = Matrix::block_assemble(&zero_d, &dpic, &zero_a, &zero_a)?;
            sb.zero("PQP = 0", p.mul(&q)?.mul(&p)?);
            sb.zero("PQ^2 = 0", p.mul(&q)?.mul(&q)?);
            let d2dd = bi.d.power(2)?.mul(&zd.dinv)?;
            let bddd = bi.b.mul(&zd.core_proj)?;
            let ddpi = bi.d.mul(&zd.core_complement)?;
            let bdpi = bi.b.mul(&zd.core_complement)?;
            let p1 = Matrix::block_assemble(&d2dd, &ddc, &bddd, &bi.a)?;
            let p2 = Matrix::block_assemble(&ddpi, &zero_d, &bdpi, &zero_a)?;
            sb.zero("P2 P1 = 0", p2.mul(&p1)?);
            sb.nilpotent("P2 - P2^3 nilpotent", p2.sub(&p2.power(3)?)?)?;
            (flipped, vec![p1, p2, q])
        }
        TheoremId::L3_1 => {
            let (a, b) = two(inst);
            let zb = drazin_inverse(b)?;
            let bpi = &zb.core_complement;
            let bbpi = b.mul(bpi)?;
            let bpiabpi = bpi.mul(a)?.mul(bpi)?;
            sb.nilpotent("A nilpotent", a.clone())?;
            sb.nilpotent("BB^pi nilpotent", bbpi.clone())?;
            sb.zero("(B^piAB^pi)(BB^pi) = 0", bpiabpi.mul(&bbpi)?);
            (a.add(b)?, vec![a.clone(), b.clone()])
        }
        TheoremId::L3_2 => {
            let bi = four(inst);
            let zero_b = Matrix::zero(bi.b.rows(), bi.b.cols());
            let zero_c = Matrix::zero(bi.c.rows(), bi.c.cols());
            let p = Matrix::block_assemble(&bi.a, &zero_b, &zero_c, &Matrix::zero(bi.d.rows(), bi.d.cols()))?;
            let q = bi.m.sub(&p)?;
            sb.zero("PQ = 0", p.mul(&q)?);
            (bi.m.clone(), vec![p, q])
        }
        TheoremId::L3_3 => {
            let (a, b) = two(inst);
            let za = drazin_inverse(a)?;
            let zb = drazin_inverse(b)?;
            sb.zero("A^HB = 0", za.dinv.mul(b)?);
            sb.zero("AB^H = 0", a.mul(&zb.dinv)?);
            // The reduced conditions of the proof, in projector form.
            let aapi = a.mul(&za.core_complement)?;
            sb.zero("(AA^pi)B^H = 0", aapi.mul(&zb.dinv)?);
            sb.zero(
                "B^pi(AA^pi)B = 0",
                zb.core_complement.mul(&aapi)?.mul(b)?,
            );
            (a.add(b)?, vec![a.clone(), b.clone()])
        }
        TheoremId::T3_4 | TheoremId::C3_5 => {
            let bi = four(inst);
            let zd = drazin_inverse(&bi.d)?;
            let ddpi = bi.d.mul(&zd.core_complement)?;
            let d2dh = bi.d.power(2)?.mul(&zd.dinv)?;
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let zero_b = Matrix::zero(bi.b.rows(), bi.b.cols());
            let p = Matrix::block_assemble(&zero_a, &bi.b, &Matrix::zero(bi.c.rows(), bi.c.cols()), &ddpi)?;
            let q = Matrix::block_assemble(&bi.a, &zero_b, &bi.c, &d2dh)?;
            sb.zero("P^2 nilpotent witness: P^2 strictly decays", p.power(p.rows())?);
            sb.nilpotent("Q - Q^3 nilpotent", q.sub(&q.power(3)?)?)?;
            let gm = g_matrix(&bi.a, &bi.c, &bi.d)?;
            sb.zero("PQ^H = 0", p.mul(&gm.q_hirano)?);
            sb.zero("Q^piPQ = 0", gm.q_pi.mul(&p)?.mul(&q)?);
            (bi.m.clone(), vec![p, q])
        }
        TheoremId::T3_7 => {
            let bi = four(inst);
            let za = drazin_inverse(&bi.a)?;
            let zd = drazin_inverse(&bi.d)?;
            let zero_b = Matrix::zero(bi.b.rows(), bi.b.cols());
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let p = Matrix::block_assemble(&bi.a, &zero_b, &bi.c, &Matrix::zero(bi.d.rows(), bi.d.cols()))?;
            let q = Matrix::block_assemble(&zero_a, &bi.b, &Matrix::zero(bi.c.rows(), bi.c.cols()), &bi.d)?;
            // closed forms for P^H, Q^H from the proof
            let ph = Matrix::block_assemble(
                &za.dinv,
                &Matrix::zero(bi.a.rows(), bi.b.cols()),
                &bi.c.mul(&za.dinv.power(2)?)?,
                &Matrix::zero(bi.d.rows(), bi.d.cols()),
            )?;
            let qh = Matrix::block_assemble(
                &zero_a,
                &Matrix::zero(bi.a.rows(), bi.b.cols()),
                &Matrix::zero(bi.c.rows(), bi.a.cols()),
                &zd.dinv,
            )?;
            let qpi = Matrix::identity(q.rows()).sub(&q.mul(&qh)?)?;
            sb.zero("P^HQ = 0", ph.mul(&q)?);
            sb.zero("PQ^H = 0", p.mul(&qh)?);
            sb.zero("Q^piPQ = 0", qpi.mul(&p)?.mul(&q)?);
            (bi.m.clone(), vec![p, q])
        }
        TheoremId::C3_8 => {
            // Flip to [[D, C],[B, A]] and split as in the proof.
            let bi = four(inst);
            let za = drazin_inverse(&bi.a)?;
            let zd = drazin_inverse(&bi.d)?;
            let flipped = Matrix::block_assemble(&bi.d, &bi.c, &bi.b, &bi.a)?;
            let zero_d = Matrix::zero(bi.d.rows(), bi.d.cols());
            let zero_a = Matrix::zero(bi.a.rows(), bi.a.cols());
            let p = Matrix::block_assemble(&bi.d, &bi.c, &Matrix::zero(bi.b.rows(), bi.b.cols()), &zero_a)?;
            let q = flipped.sub(&p)?;
            let ph = Matrix::block_assemble(
                &zd.dinv,
                &zd.dinv.power(2)?.mul(&bi.c)?,
                &Matrix::zero(bi.b.rows(), bi.d.cols()),
                &zero_a,
            )?;
            let qh = Matrix::block_assemble(
                &zero_d,
                &Matrix::zero(bi.d.rows(), bi.c.cols()),
                &za.dinv.power(2)?.mul(&bi.b)?,
                &za.dinv,
            )?;
            let ppi = Matrix::identity(p.rows()).sub(&p.mul(&ph)?)?;
            let qpi = Matrix::identity(q.rows()).sub(&q.mul(&qh)?)?;
            sb.zero("P^HQ = 0", ph.mul(&q)?);
            sb.zero("PQ^H = 0", p.mul(&qh)?);
            sb.zero("Q^piPQP^pi = 0", qpi.mul(&p)?.mul(&q)?.mul(&ppi)?);
            (flipped, vec![p, q])
        }
    };
    // Sanity: summands always sum to the target.
    let mut sum = summands[0].clone();
    for s in &summands[1..] {
        sum = sum.add(s)?;
    }
    if sum != target {
        return Err(Error::CertificateFailure(format!(
            "witness summands for {id} do not sum to the target"
        )));
    }
    Ok(WitnessSplit { target, summands, side_conditions: sb.sides })
}

// ---------------------------------------------------------------------------
// the G-matrix underlying the T3_4 witness

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMatrix {
    pub g: Matrix,
    /// `Q = [[A, 0],[C, D^2 D^H]]`
    pub q: Matrix,
    /// Candidate `Q^H = [[A^H, 0],[G, D^H]]`, verified before return.
    pub q_hirano: Matrix,
    /// `Q^pi = I - Q Q^H`
    pub q_pi: Matrix,
}

/// Computes the explicit lower-left correction term `G` of the triangular
/// matrix `Q = [[A, 0],[C, D^2 D^H]]` and verifies that `[[A^H, 0],[G, D^H]]`
/// satisfies the Hirano defining equations for `Q`. `A` and `D` must be
/// Hirano invertible.
pub fn g_matrix(a: &Matrix, c: &Matrix, d: &Matrix) -> Result<GMatrix> {
    use crate::gendrazin::{index, is_hirano_invertible};
    if is_hirano_invertible(a)?.is_none() || is_hirano_invertible(d)?.is_none() {
        return Err(Error::NotHirano);
    }
    let za: DrazinData = drazin_inverse(a)?;
    let zd: DrazinData = drazin_inverse(d)?;
    let r = index(a)?;
    let s = index(d)?;
    let ah = &za.dinv;
    let dh = &zd.dinv;
    let d2dh = d.power(2)?.mul(dh)?;

    let mut g = Matrix::zero(c.rows(), c.cols());
    for i in 0..r {
        let term = dh
            .power(i + 2)?
            .mul(c)?
            .mul(&a.power(i)?)?
            .mul(&za.core_complement)?;
        g = g.add(&term)?;
    }
    for i in 0..s {
        let term = zd
            .core_complement
            .mul(&d2dh.power(i)?)?
            .mul(c)?
            .mul(&ah.power(i + 2)?)?;
        g = g.add(&term)?;
    }
    g = g.sub(&dh.mul(c)?.mul(ah)?)?;

    let zero_tr = Matrix::zero(a.rows(), d.cols());
    let q = Matrix::block_assemble(a, &zero_tr, c, &d2dh)?;
    let q_hirano = Matrix::block_assemble(ah, &zero_tr, &g, dh)?;
    let q_pi = Matrix::identity(q.rows()).sub(&q.mul(&q_hirano)?)?;

    // Hirano defining equations for Q.
    let fail = |what: &str| Err(Error::CertificateFailure(format!("g_matrix: {what}")));
    if q.mul(&q_hirano)? != q_hirano.mul(&q)? {
        return fail("Q Q^H != Q^H Q");
    }
    if q_hirano.mul(&q)?.mul(&q_hirano)? != q_hirano {
        return fail("Q^H Q Q^H != Q^H");
    }
    if is_nilpotent(&q.power(2)?.sub(&q.mul(&q_hirano)?)?)?.is_none() {
        return fail("Q^2 - Q Q^H not nilpotent");
    }
    // The projection's lower-left entry must be -(CA^H + D^2 D^H G).
    let expected = c.mul(ah)?.add(&d2dh.mul(&g)?)?.neg();
    let (_, _, lower_left, _) = q_pi.block_split(a.rows(), a.cols())?;
    if lower_left != expected {
        return fail("Q^pi lower-left block != -(CA^H + D^2 D^H G)");
    }
    Ok(GMatrix { g, q, q_hirano, q_pi })
}
