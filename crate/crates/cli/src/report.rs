//! Report documents and their two renderings: aligned plain text and JSON.

use std::fmt::Write;

use serde::Serialize;

use polygraph_core::counterexample::{CounterexampleReport, DegreeRow};
use polygraph_core::{EHNormalForm, PullbackReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub trait Render {
    fn text(&self) -> String;
}

/// Renders a report. Both formats end with a newline and depend only on the
/// report, so identical runs give identical bytes.
pub fn emit_report<R: Render + Serialize>(report: &R, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// A cell as its vertex and sorted generator occurrences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDoc {
    pub vertex: String,
    pub content: Vec<String>,
}

impl From<&EHNormalForm> for CellDoc {
    fn from(c: &EHNormalForm) -> Self {
        CellDoc {
            vertex: c.vertex.clone(),
            content: c.content.occurrences().cloned().collect(),
        }
    }
}

fn sorted(c: &EHNormalForm) -> Vec<String> {
    c.content.occurrences().cloned().collect()
}

fn pair_text((p, q): &(EHNormalForm, EHNormalForm)) -> String {
    format!("{p}  vs  {q}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleDoc {
    pub degree_bound: usize,
    pub is_pullback: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<[Vec<String>; 2]>,
    pub projections_agree: bool,
    pub mono_check: bool,
    pub reduction_check: bool,
    pub confirmed: bool,
    pub cardinality_table: Vec<DegreeRow>,
    #[serde(skip)]
    witness_cells: Option<(EHNormalForm, EHNormalForm)>,
}

impl From<&CounterexampleReport> for CounterexampleDoc {
    fn from(r: &CounterexampleReport) -> Self {
        CounterexampleDoc {
            degree_bound: r.degree_bound,
            is_pullback: r.star3_report.is_pullback,
            witness: r.witness.as_ref().map(|(p, q)| [sorted(p), sorted(q)]),
            missing: r
                .star3_report
                .missing
                .as_ref()
                .map(|(x, y)| [sorted(x), sorted(y)]),
            projections_agree: r.projections_agree,
            mono_check: r.mono_check,
            reduction_check: r.reduction_check,
            confirmed: r.confirmed(),
            cardinality_table: r.cardinality_table.clone(),
            witness_cells: r.witness.clone(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl Render for CounterexampleDoc {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "degree bound:        {}", self.degree_bound);
        let _ = writeln!(s, "cell square pullback: {}", yes_no(self.is_pullback));
        match &self.witness_cells {
            Some(w) => {
                let _ = writeln!(s, "witness:             {}", pair_text(w));
            }
            None => {
                let _ = writeln!(s, "witness:             none");
            }
        }
        let _ = writeln!(s, "projections agree:   {}", yes_no(self.projections_agree));
        let _ = writeln!(s, "inclusion is mono:   {}", yes_no(self.mono_check));
        let _ = writeln!(s, "reduction holds:     {}", yes_no(self.reduction_check));
        s.push('\n');
        s.push_str(&degree_table(&self.cardinality_table));
        s.push('\n');
        let verdict = if self.confirmed {
            "confirmed: the parallel-pair functor does not preserve this product"
        } else {
            "not confirmed"
        };
        let _ = writeln!(s, "{verdict}");
        s
    }
}

pub fn degree_table(rows: &[DegreeRow]) -> String {
    let mut s =
        String::from("degree  product  pullback  image  max-fiber  surjective  injective\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>6}  {:>7}  {:>8}  {:>5}  {:>9}  {:>10}  {:>9}",
            r.degree,
            r.product_cells,
            r.pullback_elements,
            r.comparison_image,
            r.max_fiber,
            yes_no(r.is_surjective()),
            yes_no(r.is_injective()),
        );
    }
    s
}

/// Verdict on a square of cell maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackDoc {
    pub left_map: String,
    pub right_map: String,
    pub degree_bound: usize,
    pub apex_cells: usize,
    pub is_pullback: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<[CellDoc; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing: Option<[CellDoc; 2]>,
    #[serde(skip)]
    report: PullbackReport<EHNormalForm, EHNormalForm, EHNormalForm>,
}

impl PullbackDoc {
    pub fn new(
        left_map: &str,
        right_map: &str,
        degree_bound: usize,
        apex_cells: usize,
        report: PullbackReport<EHNormalForm, EHNormalForm, EHNormalForm>,
    ) -> Self {
        let both = |(a, b): &(EHNormalForm, EHNormalForm)| [CellDoc::from(a), CellDoc::from(b)];
        PullbackDoc {
            left_map: left_map.to_owned(),
            right_map: right_map.to_owned(),
            degree_bound,
            apex_cells,
            is_pullback: report.is_pullback,
            collision: report.collision.as_ref().map(both),
            missing: report.missing.as_ref().map(both),
            report,
        }
    }
}

impl Render for PullbackDoc {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "square over {} and {}, cells of degree <= {} ({} in the apex)",
            self.left_map, self.right_map, self.degree_bound, self.apex_cells
        );
        let _ = writeln!(s, "is pullback: {}", yes_no(self.is_pullback));
        if let Some(c) = &self.report.collision {
            let _ = writeln!(s, "collision:   {}", pair_text(c));
        }
        if let Some(m) = &self.report.missing {
            let _ = writeln!(s, "missing:     {}", pair_text(m));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCells {
    pub degree: usize,
    pub cells: Vec<CellDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellsDoc {
    pub computad: String,
    pub max_degree: usize,
    pub total: usize,
    pub degrees: Vec<DegreeCells>,
}

impl CellsDoc {
    pub fn new(computad: &str, graded: &[Vec<EHNormalForm>]) -> Self {
        let degrees: Vec<DegreeCells> = graded
            .iter()
            .enumerate()
            .map(|(degree, cells)| DegreeCells {
                degree,
                cells: cells.iter().map(CellDoc::from).collect(),
            })
            .collect();
        CellsDoc {
            computad: computad.to_owned(),
            max_degree: graded.len().saturating_sub(1),
            total: degrees.iter().map(|d| d.cells.len()).sum(),
            degrees,
        }
    }
}

fn cell_text(c: &CellDoc) -> String {
    format!("{}  {{{}}}", c.vertex, c.content.join(", "))
}

impl Render for CellsDoc {
    fn text(&self) -> String {
        let mut s = String::new();
        for d in &self.degrees {
            let _ = writeln!(s, "degree {}: {}", d.degree, d.cells.len());
            for c in &d.cells {
                let _ = writeln!(s, "  {}", cell_text(c));
            }
        }
        let _ = writeln!(s, "total: {}", self.total);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi2Doc {
    pub computad: String,
    pub max_degree: usize,
    pub count: usize,
    pub pairs: Vec<[CellDoc; 2]>,
}

impl Render for Pi2Doc {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "parallel pairs of cells of degree <= {}: {}",
            self.max_degree, self.count
        );
        for [p, q] in &self.pairs {
            let _ = writeln!(s, "  {}  |  {{{}}}", cell_text(p), q.content.join(", "));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub vertices: Vec<String>,
    pub edges: Vec<GeneratorDoc>,
    pub indets2: Vec<GeneratorDoc>,
    /// The product and its projections in the input language.
    #[serde(skip)]
    pub presentation: String,
}

impl Render for ProductDoc {
    fn text(&self) -> String {
        self.presentation.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalDoc {
    pub computad: String,
    pub term: String,
    pub normal_form: CellDoc,
    pub degree: usize,
}

impl Render for NormalDoc {
    fn text(&self) -> String {
        format!("{}\ndegree {}\n", cell_text(&self.normal_form), self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinitionSummary {
    pub name: String,
    pub kind: &'static str,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidateDoc {
    pub files: Vec<String>,
    pub definitions: Vec<DefinitionSummary>,
}

impl Render for ValidateDoc {
    fn text(&self) -> String {
        let mut s = String::new();
        for d in &self.definitions {
            let _ = writeln!(s, "{:<9} {:<16} {}", d.kind, d.name, d.summary);
        }
        let _ = writeln!(
            s,
            "ok: {} definitions in {} files",
            self.definitions.len(),
            self.files.len()
        );
        s
    }
}

impl Render for crate::random::SelftestReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "seed:              {}", self.seed);
        let _ = writeln!(s, "terms:             {}", self.terms);
        let _ = writeln!(s, "rewrites checked:  {}", self.rewrites_checked);
        let _ = writeln!(s, "exchanges checked: {}", self.exchanges_checked);
        let _ = writeln!(s, "equality checks:   {}", self.equality_checks);
        let _ = writeln!(s, "failures:          {}", self.failures.len());
        for f in &self.failures {
            let _ = writeln!(s, "  {f}");
        }
        s
    }
}
