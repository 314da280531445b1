//! Serializable per-stage results.

use serde::Serialize;

use super::criteria::{HomologyCriterion, PhiCriterion};
use super::fibers::Fiber;
use crate::algebra::AbelianInvariants;
use crate::cell24::VertexId;
use crate::cusp::{AffineIso3, Cusp, FlatType, LiftedComponent};
use crate::encoding::{KElem, PairingScheme};
use crate::enumerate::{EnumStats, EnumStatus};
use crate::presentation::FPresentation;
use crate::subgroup::DictionaryEntry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `H/⟨⟨fibers⟩⟩` is trivial: the double cover is a link complement in the 4-sphere.
    Sphere,
    NotSphere,
    /// Coset enumeration ran out of room.
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Sphere => "SPHERE",
            Verdict::NotSphere => "NOT-SPHERE",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeReport {
    pub kparts: Vec<KElem>,
    pub reversing: Vec<String>,
}

impl SchemeReport {
    pub fn new(scheme: &PairingScheme) -> Self {
        let names = PairingScheme::gen_names();
        SchemeReport {
            kparts: scheme.kparts().to_vec(),
            reversing: scheme
                .reversing_generators()
                .iter()
                .map(|&g| names[g].clone())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HolonomyReport {
    pub planes: String,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspReport {
    pub name: String,
    pub vertices: Vec<VertexId>,
    pub flat_type: FlatType,
    pub orientable: bool,
    pub homology: AbelianInvariants,
    pub lattice: Vec<AffineIso3>,
    /// Translations in the fundamental block other than the identity.
    pub translations: Vec<AffineIso3>,
    pub holonomy: Vec<HolonomyReport>,
    pub lift_type: Option<FlatType>,
}

impl CuspReport {
    pub fn new(c: &Cusp) -> Self {
        let st = &c.stabilizer;
        let names = PairingScheme::gen_names();
        CuspReport {
            name: c.name(),
            vertices: c.vertices.clone(),
            flat_type: c.flat_type(),
            orientable: c.orientable(),
            homology: st.homology.clone(),
            lattice: st.lattice.to_vec(),
            translations: st.block_translations().into_iter().cloned().collect(),
            holonomy: st
                .holonomy()
                .iter()
                .map(|(r, e)| HolonomyReport {
                    planes: st.rot_label(*r),
                    word: e.word.to_string_with(&names),
                })
                .collect(),
            lift_type: st.lift_type().ok(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaReport {
    pub phi: PhiCriterion,
    pub homology: HomologyCriterion,
}

impl CriteriaReport {
    pub fn pass(&self) -> bool {
        self.phi.pass && self.homology.pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCoverReport {
    pub transversal: Vec<String>,
    pub generators: usize,
    pub relators: usize,
    pub boundary: String,
    pub components: Vec<LiftedComponent>,
    pub dictionary: Vec<DictionaryEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    #[serde(flatten)]
    pub fiber: Fiber,
    /// The fiber rewritten in the double cover's generators.
    pub rewritten: String,
    pub power: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    /// Presentation of `H/⟨⟨fibers⟩⟩` after simplification.
    pub presentation: FPresentation,
    pub abelianization: AbelianInvariants,
    pub fiber_phi_dimension: usize,
    /// Why enumeration was skipped, if it was.
    pub short_circuit: Option<String>,
    pub max_cosets: usize,
    pub status: Option<EnumStatus>,
    pub order: Option<usize>,
    pub stats: Option<EnumStats>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverComponent {
    pub lift: String,
    pub power: i64,
    /// Number of boundary components of the cover above this lift.
    pub count: usize,
    pub flat_type: FlatType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub deck_order: usize,
    pub euler_characteristic: usize,
    pub components: Vec<CoverComponent>,
    pub tori: usize,
    pub klein_bottles: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: Option<String>,
    pub code: String,
    pub scheme: SchemeReport,
    pub presentation: FPresentation,
    pub cusps: Vec<CuspReport>,
    pub criteria: CriteriaReport,
    pub double_cover: DoubleCoverReport,
    pub fibers: Vec<FiberReport>,
    pub enumeration: Option<EnumerationReport>,
    pub cover: Option<CoverReport>,
    pub verdict: Option<Verdict>,
    pub warnings: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    /// The boundary of the double cover in words, e.g. `4 tori, 3 Klein bottles`.
    pub fn link_description(&self) -> String {
        let (r, s) = (
            self.criteria.homology.tori,
            self.criteria.homology.klein_bottles,
        );
        let plural =
            |n: usize, one: &str, many: &str| format!("{n} {}", if n == 1 { one } else { many });
        match (r, s) {
            (r, 0) => plural(r, "torus", "tori"),
            (0, s) => plural(s, "Klein bottle", "Klein bottles"),
            (r, s) => format!(
                "{}, {}",
                plural(r, "torus", "tori"),
                plural(s, "Klein bottle", "Klein bottles")
            ),
        }
    }
}
