//! Golden data: embedded copies, optionally replaced by files from a directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::AppError;

const EMBEDDED: &[(&str, &str)] = &[
    ("appendix_a.json", include_str!("../../../golden/appendix_a.json")),
    ("section4.json", include_str!("../../../golden/section4.json")),
    ("table1.json", include_str!("../../../golden/table1.json")),
    ("theorems3.json", include_str!("../../../golden/theorems3.json")),
    ("section5/quasi.json", include_str!("../../../golden/section5/quasi.json")),
    ("section5/subcase_2_1.json", include_str!("../../../golden/section5/subcase_2_1.json")),
    ("section5/subcase_2_2.json", include_str!("../../../golden/section5/subcase_2_2.json")),
    ("section5/subcase_2_3.json", include_str!("../../../golden/section5/subcase_2_3.json")),
    ("section5/subcase_2_4.json", include_str!("../../../golden/section5/subcase_2_4.json")),
    ("section5/subcase_2_5.json", include_str!("../../../golden/section5/subcase_2_5.json")),
];

pub const SECTION5: [&str; 6] = ["quasi", "subcase_2_1", "subcase_2_2", "subcase_2_3", "subcase_2_4", "subcase_2_5"];

#[derive(Clone, Debug, Default)]
pub struct GoldenDir(pub Option<PathBuf>);

impl GoldenDir {
    pub fn new(dir: Option<&Path>) -> GoldenDir {
        GoldenDir(dir.map(Path::to_path_buf))
    }

    pub fn read(&self, name: &str) -> Result<String, AppError> {
        if let Some(d) = &self.0 {
            let p = d.join(name);
            return std::fs::read_to_string(&p).map_err(|e| AppError::Usage(format!("{}: {e}", p.display())));
        }
        EMBEDDED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| (*s).to_string())
            .ok_or_else(|| AppError::Usage(format!("no golden file {name}")))
    }

    pub fn load<T: for<'de> Deserialize<'de>>(&self, name: &str) -> Result<T, AppError> {
        let s = self.read(name)?;
        serde_json::from_str(&s).map_err(|e| AppError::Usage(format!("{name}: {e}")))
    }
}

/// Closed forms for some of `f, g, h, r`; missing entries stay arbitrary.
pub type FamilySpec = BTreeMap<String, String>;

#[derive(Clone, Debug, Deserialize)]
pub struct Constraint {
    pub equation: String,
    pub lead: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Typo {
    #[serde(default)]
    pub template: Option<String>,
    #[serde(default)]
    pub template_constraint: Option<String>,
    pub printed: String,
    pub justification: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GeneratorEntry {
    pub label: String,
    pub generator: String,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub constraint: Option<Constraint>,
    #[serde(default)]
    pub typo: Option<Typo>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table1Row {
    pub row: u32,
    pub family: FamilySpec,
    pub assumptions: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Table1 {
    pub base: Vec<GeneratorEntry>,
    pub rows: Vec<Table1Row>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AppendixEntry {
    pub index: usize,
    pub printed: String,
    #[serde(default)]
    pub corrected: Option<String>,
    #[serde(default)]
    pub justification: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AppendixExpected {
    pub verbatim_min_fraction: f64,
    pub printed_typos: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AppendixA {
    pub count: usize,
    pub expected: AppendixExpected,
    pub equations: Vec<AppendixEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Section4 {
    pub functions: BTreeMap<String, Vec<String>>,
    pub ansatz: BTreeMap<String, String>,
    pub remaining: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AdjointGolden {
    pub printed: String,
    pub corrected: String,
    pub justification: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct StrictGolden {
    pub residual: String,
    pub witness: BTreeMap<String, String>,
    pub verdict: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct QuasiGolden {
    pub functions: BTreeMap<String, Vec<String>>,
    pub residual: String,
    pub conditions: Vec<String>,
    pub solution: FamilySpec,
    pub phi: String,
    pub verdict: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FirstSolution {
    pub family: FamilySpec,
    pub functions: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CaseGolden {
    pub case: u32,
    pub theorem_family: FamilySpec,
    pub assumptions: Vec<String>,
    pub rename: BTreeMap<String, String>,
    pub family: FamilySpec,
    pub functions: BTreeMap<String, Vec<String>>,
    pub phi: String,
    pub constraints: Vec<Constraint>,
    pub positive: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NonlinearGolden {
    pub functions: BTreeMap<String, Vec<String>>,
    pub residual: String,
    pub conditions: Vec<String>,
    pub firstsol: FirstSolution,
    pub condition: String,
    /// Second and first u-derivative of the condition, in that order.
    pub condition_u_derivatives: Vec<String>,
    pub cases: Vec<CaseGolden>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Theorems {
    pub adjoint: AdjointGolden,
    pub strict: StrictGolden,
    pub quasi: QuasiGolden,
    pub nonlinear: NonlinearGolden,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PrintedVector {
    pub cx: String,
    pub cy: String,
    pub ct: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Variant {
    pub label: String,
    #[serde(default)]
    pub cx: Option<String>,
    #[serde(default)]
    pub cy: Option<String>,
    #[serde(default)]
    pub ct: Option<String>,
    /// Replacement bodies for named definitions; the printed components are re-read with them.
    #[serde(default)]
    pub redefine: BTreeMap<String, String>,
    pub justification: String,
}

/// A printed vector that is a valid law, but the law of another listed symmetry.
#[derive(Clone, Debug, Deserialize)]
pub struct Mislabel {
    pub label: String,
    pub justification: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct VectorEntry {
    pub label: String,
    pub generator: String,
    #[serde(default)]
    pub printed: Option<PrintedVector>,
    #[serde(default)]
    pub nontrivial_if: Option<String>,
    #[serde(default)]
    pub variants: Vec<Variant>,
    #[serde(default)]
    pub specialize: BTreeMap<String, String>,
    #[serde(default)]
    pub equivalent_to: Option<Mislabel>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Section5Case {
    pub name: String,
    pub description: String,
    pub family: FamilySpec,
    pub assumptions: Vec<String>,
    pub positive: Vec<String>,
    pub functions: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub identify: BTreeMap<String, String>,
    pub phi: String,
    pub constraints: Vec<Constraint>,
    pub definitions: Vec<(String, String)>,
    #[serde(default)]
    pub expect_trivial: bool,
    pub vectors: Vec<VectorEntry>,
}
