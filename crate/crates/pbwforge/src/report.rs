//! Report assembly: runs the full verification chain on a presentation file
//! and renders the outcome as aligned text or versioned JSON.
//!
//! The chain is: confluence of the base rewriting system, well-definedness of
//! the σ's and δ's, the σ-filtered verdict, connectedness, bijectivity
//! certificates, homogenization with the graded-condition checks, the two
//! specializations (round trip back to the input and agreement with the
//! directly built associated graded presentation), z-regularity, and the
//! dimension tables with the Rees/homogenization comparison. Reports are
//! deterministic: identical input and options give byte-identical JSON.

use serde::Serialize;

use crate::coeffring;
use crate::dsl::{self, PresentationFile};
use crate::graded;
use crate::homog;
use crate::skewext::{ExtensionPresentation, FiltrationMode};
use crate::Error;

/// Options shared by the report commands.
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub degree: usize,
    pub filtration: FiltrationMode,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            degree: 10,
            filtration: FiltrationMode::Standard,
        }
    }
}

impl ReportOptions {
    /// File-level options override the defaults; command-line flags are
    /// applied by the caller on top of the result.
    pub fn with_file(mut self, file: &PresentationFile) -> Self {
        if let Some(n) = file.options.degree {
            self.degree = n;
        }
        if let Some(mode) = file.options.filtration {
            self.filtration = mode;
        }
        self
    }
}

/// One named check with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub condition: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    fn new(condition: impl Into<String>, pass: bool) -> Self {
        Verdict {
            condition: condition.into(),
            pass,
            witness: None,
        }
    }

    fn with_witness(condition: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Verdict {
            condition: condition.into(),
            pass,
            witness: Some(witness.into()),
        }
    }
}

/// Integer tables of the report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tables {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert_homogenized: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration_cumulative: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration_layers: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert_associated_graded: Option<Vec<u64>>,
}

/// Emitted presentations.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Artifacts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogenized: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associated_graded: Option<String>,
}

/// The full report. `schema` is bumped on breaking changes to this layout.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub source: String,
    pub degree: usize,
    pub filtration: String,
    pub verdicts: Vec<Verdict>,
    pub tables: Tables,
    pub artifacts: Artifacts,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned, human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "report for {} (degree bound {}, {} filtration)\n",
            self.source, self.degree, self.filtration
        ));
        let width = self
            .verdicts
            .iter()
            .map(|v| v.condition.len())
            .max()
            .unwrap_or(0);
        for v in &self.verdicts {
            let mark = if v.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("  {:width$}  {}", v.condition, mark));
            if let Some(w) = &v.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        let table = |label: &str, data: &Option<Vec<u64>>, out: &mut String| {
            if let Some(values) = data {
                let cells: Vec<String> = values.iter().map(u64::to_string).collect();
                out.push_str(&format!("  {label}: {}\n", cells.join(" ")));
            }
        };
        if self.tables.hilbert_homogenized.is_some()
            || self.tables.filtration_cumulative.is_some()
            || self.tables.hilbert_associated_graded.is_some()
        {
            out.push_str("tables (degree 0..N)\n");
            table(
                "hilbert H(A)      ",
                &self.tables.hilbert_homogenized,
                &mut out,
            );
            table(
                "dim F_p(A)        ",
                &self.tables.filtration_cumulative,
                &mut out,
            );
            table(
                "dim F_p/F_(p-1)   ",
                &self.tables.filtration_layers,
                &mut out,
            );
            table(
                "hilbert G(A)      ",
                &self.tables.hilbert_associated_graded,
                &mut out,
            );
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

/// The `check` chain: structural verdicts only, no homogenization or tables.
pub fn run_check(file: &PresentationFile, source: &str, opts: &ReportOptions) -> Report {
    let mut verdicts = Vec::new();
    let mut diagnostics = Vec::new();
    push_structural_verdicts(file, opts, &mut verdicts, &mut diagnostics);
    Report {
        schema: 1,
        source: source.to_string(),
        degree: opts.degree,
        filtration: mode_name(opts.filtration).to_string(),
        verdicts,
        tables: Tables::default(),
        artifacts: Artifacts::default(),
        diagnostics,
    }
}

fn mode_name(mode: FiltrationMode) -> &'static str {
    match mode {
        FiltrationMode::Standard => "standard",
        FiltrationMode::Trivial => "trivial",
    }
}

fn push_structural_verdicts(
    file: &PresentationFile,
    opts: &ReportOptions,
    verdicts: &mut Vec<Verdict>,
    diagnostics: &mut Vec<String>,
) {
    let ring = &file.ring;
    // exhaustive strategy sweep is capped so the word count stays small
    let sweep = (1..=4)
        .rev()
        .find(|&d| ring.alphabet().len().pow(d as u32) <= 20_000)
        .unwrap_or(1);
    let confluence = ring.check_confluence(Some(sweep));
    verdicts.push(Verdict::with_witness(
        "base_confluent",
        confluence.is_confluent(),
        format!(
            "{} overlaps, words swept to degree {}",
            confluence.overlaps_checked, sweep
        ),
    ));

    let Some(ext) = &file.extension else {
        diagnostics.push("no extension block: only the ring was checked".to_string());
        return;
    };

    for i in 0..ext.variable_count() {
        let name = &ext.variables()[i];
        let wd = coeffring::endo_well_defined(ext.sigma(i).images(), ring).unwrap_or(false);
        verdicts.push(Verdict::new(format!("sigma[{name}]_well_defined"), wd));
        let wd = coeffring::deriv_well_defined(ext.delta(i).images(), ext.sigma(i).images(), ring)
            .unwrap_or(false);
        verdicts.push(Verdict::new(format!("delta[{name}]_well_defined"), wd));
    }

    let report = ext.check_sigma_filtered();
    for (i, &ok) in report.sigma_filtered.iter().enumerate() {
        verdicts.push(Verdict::new(
            format!("sigma[{}]_filtered", ext.variables()[i]),
            ok,
        ));
    }
    for (i, &ok) in report.delta_filtered.iter().enumerate() {
        verdicts.push(Verdict::new(
            format!("delta[{}]_filtered", ext.variables()[i]),
            ok,
        ));
    }
    verdicts.push(Verdict::new("preserves_tdeg", report.preserves_tdeg));
    verdicts.push(Verdict::with_witness(
        "sigma_filtered",
        report.verdict,
        if report.failures.is_empty() {
            "all conditions hold".to_string()
        } else {
            report.failures.join("; ")
        },
    ));
    diagnostics.extend(report.notes.iter().cloned());
    if report.preserves_tdeg != report.preserves_tdeg_strict {
        diagnostics.push(format!(
            "strict tdeg-preservation reading would give {}",
            report.preserves_tdeg_strict
        ));
    }

    verdicts.push(Verdict::new("connected", ext.check_connected()));
    let bij = ext.bijectivity();
    verdicts.push(Verdict::with_witness(
        "bijectivity_verified",
        bij.is_verified(),
        bij.to_string(),
    ));

    if opts.filtration == FiltrationMode::Trivial {
        verdicts.push(trivial_filtration_verdict(ext));
    }
}

/// Under the trivial positive filtration every coefficient has degree 0, so
/// the total degree collapses onto the monomial-only degree. Checked on a
/// deterministic element supply.
fn trivial_filtration_verdict(ext: &ExtensionPresentation) -> Verdict {
    let elements = ext.enumerate_elements(4, 120);
    let mut checked = 0usize;
    for f in &elements {
        if f.is_zero() {
            continue;
        }
        checked += 1;
        let trivial = ext.tdeg_with(f, FiltrationMode::Trivial).expect("nonzero");
        let lr = ext.lr_degree(f).expect("nonzero");
        if trivial != lr {
            return Verdict::with_witness(
                "trivial_filtration_degree_coincidence",
                false,
                format!("element with monomial degree {lr} but trivial tdeg {trivial}"),
            );
        }
    }
    Verdict::with_witness(
        "trivial_filtration_degree_coincidence",
        true,
        format!("{checked} elements checked"),
    )
}

/// The full chain: structural verdicts, homogenization with graded checks,
/// specializations, z-regularity, and dimension tables.
pub fn run_report(file: &PresentationFile, source: &str, opts: &ReportOptions) -> Report {
    let mut report = run_check(file, source, opts);
    let Some(ext) = &file.extension else {
        return report;
    };

    let sigma_filtered = ext.check_sigma_filtered().verdict;
    let bijective = ext.bijectivity().is_verified();
    if !sigma_filtered || !bijective {
        report
            .diagnostics
            .push("homogenization and dimension tables skipped: hypotheses not met".to_string());
        return report;
    }

    match homogenization_section(ext, opts, &mut report) {
        Ok(()) => {}
        Err(e) => report.diagnostics.push(format!("internal failure: {e}")),
    }
    report
}

fn homogenization_section(
    ext: &ExtensionPresentation,
    opts: &ReportOptions,
    report: &mut Report,
) -> Result<(), Error> {
    let n = opts.degree;
    let h = homog::homogenize_extension(ext)?;
    let graded_report = h.verify();
    report.verdicts.push(Verdict::with_witness(
        "homogenization_graded_conditions",
        graded_report.verdict,
        if graded_report.failures.is_empty() {
            "sigma-hat graded, delta-hat graded, cross components in graded pieces".to_string()
        } else {
            graded_report.failures.join("; ")
        },
    ));

    let back = h.specialize_one()?;
    report
        .verdicts
        .push(Verdict::new("specialize_one_recovers_input", back == *ext));

    let gr_direct = homog::gr_presentation(ext)?;
    let gr_via_h = h.specialize_zero()?;
    report.verdicts.push(Verdict::new(
        "specialize_zero_matches_associated_graded",
        gr_via_h == gr_direct,
    ));

    let z_reg = graded::check_z_regular(&h, n)?;
    report.verdicts.push(Verdict::with_witness(
        "z_regular",
        z_reg.regular,
        z_reg
            .failure
            .unwrap_or_else(|| format!("injective up to degree {}", z_reg.checked_up_to)),
    ));

    let hilbert_h = graded::hilbert_extension(&h, n)?;
    let filtration = graded::filtration_dims(ext, n)?;
    let gr_dims = graded::hilbert_extension(&gr_direct, n)?;

    let rees_matches = filtration.cum_dims() == hilbert_h.dims();
    report.verdicts.push(Verdict::with_witness(
        "rees_matches_homogenization",
        rees_matches,
        format!("degreewise comparison up to {n}"),
    ));
    let layers_match = filtration.layer_dims() == gr_dims.dims();
    report
        .verdicts
        .push(Verdict::new("associated_graded_layers_match", layers_match));

    report.tables.hilbert_homogenized = Some(hilbert_h.dims().to_vec());
    report.tables.filtration_cumulative = Some(filtration.cum_dims().to_vec());
    report.tables.filtration_layers = Some(filtration.layer_dims());
    report.tables.hilbert_associated_graded = Some(gr_dims.dims().to_vec());

    report.artifacts.homogenized = Some(dsl::emit_extension(h.extension(), h.central_name()));
    report.artifacts.associated_graded = Some(dsl::emit_extension(
        gr_direct.extension(),
        gr_direct.central_name(),
    ));
    Ok(())
}

/// DSL text of the homogenization.
pub fn run_homogenize(ext: &ExtensionPresentation) -> Result<String, Error> {
    let h = homog::homogenize_extension(ext)?;
    Ok(dsl::emit_extension(h.extension(), h.central_name()))
}

/// DSL text of the associated graded presentation.
pub fn run_gr(ext: &ExtensionPresentation) -> Result<String, Error> {
    let g = homog::gr_presentation(ext)?;
    Ok(dsl::emit_extension(g.extension(), g.central_name()))
}

/// PBW normal form of an element expression, rendered for display.
pub fn run_nf(ext: &ExtensionPresentation, expr: &str) -> Result<String, Error> {
    let value = dsl::evaluate_element(ext, expr).map_err(Error::Parse)?;
    Ok(ext.display(&value).to_string())
}

/// Dimension tables for the `hilbert` command. A presentation that is
/// already graded is counted directly; a filtered one is homogenized first
/// and reported together with its filtration and associated-graded tables.
pub fn run_hilbert(file: &PresentationFile, source: &str, n: usize) -> Result<Report, Error> {
    let mut report = Report {
        schema: 1,
        source: source.to_string(),
        degree: n,
        filtration: "standard".to_string(),
        verdicts: Vec::new(),
        tables: Tables::default(),
        artifacts: Artifacts::default(),
        diagnostics: Vec::new(),
    };
    match &file.extension {
        None => {
            let central = file
                .central
                .as_ref()
                .and_then(|name| file.ring.alphabet().index_of(name));
            match homog::GradedPresentation::new(file.ring.clone(), central) {
                Ok(graded) => {
                    let table = graded::hilbert_ring(&graded, n);
                    report.tables.hilbert_homogenized = Some(table.dims().to_vec());
                }
                Err(_) => {
                    let layers = file.ring.normal_words_by_degree(n);
                    let mut acc = 0u64;
                    let cum: Vec<u64> = layers
                        .iter()
                        .map(|l| {
                            acc += l.len() as u64;
                            acc
                        })
                        .collect();
                    report.tables.filtration_cumulative = Some(cum);
                }
            }
        }
        Some(ext) => {
            let central = file
                .central
                .as_ref()
                .and_then(|name| ext.base().alphabet().index_of(name));
            let as_graded = homog::GradedExtensionPresentation::new(ext.clone(), central);
            match as_graded {
                Ok(graded) => {
                    let table = graded::hilbert_extension(&graded, n)?;
                    report.tables.hilbert_homogenized = Some(table.dims().to_vec());
                }
                Err(_) => {
                    let h = homog::homogenize_extension(ext)?;
                    let hilbert_h = graded::hilbert_extension(&h, n)?;
                    let filtration = graded::filtration_dims(ext, n)?;
                    let gr = homog::gr_presentation(ext)?;
                    let gr_dims = graded::hilbert_extension(&gr, n)?;
                    report.tables.hilbert_homogenized = Some(hilbert_h.dims().to_vec());
                    report.tables.filtration_cumulative = Some(filtration.cum_dims().to_vec());
                    report.tables.filtration_layers = Some(filtration.layer_dims());
                    report.tables.hilbert_associated_graded = Some(gr_dims.dims().to_vec());
                }
            }
        }
    }
    Ok(report)
}
