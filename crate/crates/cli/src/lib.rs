//! Command implementations for the `cpog` binary. Each command renders its
//! whole report into a string so output is deterministic and testable.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::Path;

use anyhow::{bail, Context, Result};
use cpog_core::closed_form::{classify_family, degree_abelian, degree_dihedral};
use cpog_core::graph::{build_graph, CoprimeOrderGraph, ExportFormat, SpectrumSummary};
use cpog_core::group::{parse_group_spec, GroupSpec};
use cpog_core::linalg::{certify_spectrum, exact_integer_spectrum, SpectrumCertificate, DEFAULT_CHARPOLY_CAP};
use cpog_core::verify::{self, VerificationReport, VerifyTarget};
use cpog_core::Spectrum;

/// Rendered command output plus whether every requested check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeMethod {
    Formula,
    Brute,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumMethod {
    ClosedForm,
    Exact,
    #[default]
    Both,
}

pub fn describe(spec_text: &str, cap: usize) -> Result<Outcome> {
    let spec = parse_group_spec(spec_text, cap)?;
    let mut out = String::new();
    writeln!(out, "group: {spec}")?;
    writeln!(out, "order: {}", spec.order())?;
    match spec.canonical_form() {
        Some(canon) => {
            writeln!(out, "canonical: {canon}")?;
            for p in canon.primes() {
                let exps: Vec<String> = canon.exponents(p).iter().map(u32::to_string).collect();
                writeln!(out, "  p={p}: exponents [{}], rank {}", exps.join(", "), canon.rank(p))?;
            }
        }
        None => writeln!(out, "canonical: non-abelian, {} rotations", spec.order() / 2)?,
    }
    writeln!(out, "exponent: {}", spec.exponent())?;
    let profile = spec.order_profile(cap)?;
    writeln!(out, "order profile:")?;
    writeln!(out, "  {:>6}  {:>6}", "order", "count")?;
    for (order, count) in &profile.0 {
        writeln!(out, "  {order:>6}  {count:>6}")?;
    }
    Ok(Outcome::pass(out))
}

fn formula_degree(spec: &GroupSpec, order: u64) -> Result<u64> {
    Ok(match spec {
        GroupSpec::Abelian(_) => {
            let canon = spec.canonical_form().expect("abelian spec has a canonical form");
            degree_abelian(&canon, order)?
        }
        GroupSpec::Dihedral(n) => degree_dihedral(*n, order)?,
    })
}

pub fn degrees(spec_text: &str, method: DegreeMethod, cap: usize) -> Result<Outcome> {
    let spec = parse_group_spec(spec_text, cap)?;
    let graph = build_graph(&spec, cap)?;
    let mut out = String::new();
    let mut ok = true;
    writeln!(out, "group: {spec} (order {})", graph.len())?;
    let mut header = format!("{:>6}  {:>6}", "order", "count");
    if method != DegreeMethod::Brute {
        header += &format!("  {:>8}", "formula");
    }
    if method != DegreeMethod::Formula {
        header += &format!("  {:>8}", "brute");
    }
    if method == DegreeMethod::Both {
        header += &format!("  {:>8}", "match");
    }
    writeln!(out, "{header}")?;

    for (order, range) in graph.order_classes() {
        let mut row = format!("{order:>6}  {:>6}", range.len());
        let formula = if method != DegreeMethod::Brute {
            let d = formula_degree(&spec, order)?;
            row += &format!("  {d:>8}");
            Some(d as usize)
        } else {
            None
        };
        let brute = if method != DegreeMethod::Formula {
            let lo = range
                .clone()
                .map(|i| graph.degrees[i])
                .min()
                .expect("class is nonempty");
            let hi = range
                .clone()
                .map(|i| graph.degrees[i])
                .max()
                .expect("class is nonempty");
            let cell = if lo == hi {
                lo.to_string()
            } else {
                format!("{lo}..{hi}")
            };
            row += &format!("  {cell:>8}");
            (lo == hi).then_some(lo)
        } else {
            None
        };
        if method == DegreeMethod::Both {
            let matched = brute.is_some() && brute == formula;
            ok &= matched;
            row += &format!("  {:>8}", if matched { "match" } else { "MISMATCH" });
        } else if method == DegreeMethod::Brute {
            ok &= brute.is_some();
        }
        writeln!(out, "{row}")?;
    }
    Ok(Outcome { text: out, ok })
}

fn render_certificate(out: &mut String, cert: &SpectrumCertificate) -> std::fmt::Result {
    writeln!(out, "certificate:")?;
    for c in &cert.checks {
        let route = match c.route {
            cpog_core::linalg::modular::NullityRoute::ModularKernel => "modular kernel",
            cpog_core::linalg::modular::NullityRoute::Bareiss => "bareiss",
        };
        writeln!(
            out,
            "  eigenvalue {:>6}: claimed {:>6}, nullity {:>6} ({route}) {}",
            c.eigenvalue,
            c.claimed,
            c.nullity,
            if c.pass { "ok" } else { "FAIL" }
        )?;
    }
    let t = &cert.totals;
    writeln!(
        out,
        "  multiplicities: {} of {} {}",
        t.multiplicity_sum,
        t.dimension,
        if t.multiplicities_match { "ok" } else { "FAIL" }
    )?;
    writeln!(
        out,
        "  trace: {} vs weighted sum {} {}",
        t.trace,
        t.weighted_sum,
        if t.trace_matches { "ok" } else { "FAIL" }
    )?;
    writeln!(out, "  symmetric: {}", if cert.symmetric { "yes" } else { "no" })?;
    writeln!(out, "verdict: {}", if cert.verdict { "PASS" } else { "FAIL" })
}

fn closed_form_spectrum(spec: &GroupSpec) -> Result<(String, Spectrum)> {
    let family = classify_family(spec)?;
    Ok((family.to_string(), family.spectrum()?))
}

pub fn spectrum(spec_text: &str, method: SpectrumMethod, cap: usize) -> Result<Outcome> {
    let spec = parse_group_spec(spec_text, cap)?;
    let mut out = String::new();
    let mut ok = true;
    writeln!(out, "group: {spec} (order {})", spec.order())?;

    let closed = if method != SpectrumMethod::Exact {
        let (family, s) = closed_form_spectrum(&spec)?;
        writeln!(out, "family: {family}")?;
        writeln!(out, "closed form: {s}")?;
        Some(s)
    } else {
        None
    };
    if method == SpectrumMethod::ClosedForm {
        return Ok(Outcome::pass(out));
    }

    let laplacian = build_graph(&spec, cap)?.laplacian();
    if method == SpectrumMethod::Exact {
        let exact = exact_integer_spectrum(&laplacian, DEFAULT_CHARPOLY_CAP)?;
        let pairs: Vec<String> = exact
            .integer_eigenvalues
            .iter()
            .map(|(v, m)| format!("{v}:{m}"))
            .collect();
        writeln!(out, "integer eigenvalues: {{{}}}", pairs.join(", "))?;
        if exact.is_integral() {
            writeln!(out, "integral: yes")?;
        } else {
            writeln!(
                out,
                "integral: no ({} of {} eigenvalues)",
                exact.integral_multiplicity(),
                exact.dimension
            )?;
            match &exact.remainder {
                Some(r) => writeln!(out, "remaining factor: {r}")?,
                None => writeln!(
                    out,
                    "remaining factor: not computed above dimension {DEFAULT_CHARPOLY_CAP}"
                )?,
            }
        }
    } else {
        let claimed = closed.expect("closed form computed for both");
        let cert = certify_spectrum(&laplacian, &claimed);
        render_certificate(&mut out, &cert)?;
        ok = cert.verdict;
    }
    Ok(Outcome { text: out, ok })
}

/// Exports the graph to `path`. With `with_spectrum`, JSON output carries
/// the closed-form spectrum and its certificate verdict.
pub fn export(spec_text: &str, format: ExportFormat, path: &Path, with_spectrum: bool, cap: usize) -> Result<Outcome> {
    let spec = parse_group_spec(spec_text, cap)?;
    let graph = build_graph(&spec, cap)?;
    if with_spectrum && format != ExportFormat::Json {
        bail!("--with-spectrum applies to JSON export only");
    }
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    let mut ok = true;
    if with_spectrum {
        let summary = spectrum_summary(&graph)?;
        ok = summary.certified;
        serde_json::to_writer_pretty(&mut w, &graph.json_document(Some(summary)))?;
        writeln!(w)?;
    } else {
        graph.export(format, &mut w)?;
    }
    w.flush().with_context(|| format!("cannot write {}", path.display()))?;
    Ok(Outcome {
        text: format!(
            "wrote {} ({} vertices, {} edges)\n",
            path.display(),
            graph.len(),
            graph.edge_count()
        ),
        ok,
    })
}

fn spectrum_summary(graph: &CoprimeOrderGraph) -> Result<SpectrumSummary> {
    let (_, s) = closed_form_spectrum(&graph.spec)?;
    let cert = certify_spectrum(&graph.laplacian(), &s);
    Ok(SpectrumSummary {
        closed_form: s.pairs().iter().map(|&(v, m)| [v, m]).collect(),
        certified: cert.verdict,
    })
}

/// Sweep bounds; `None` picks the target's default.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyBounds {
    pub max_order: Option<u64>,
    pub max_n: Option<u64>,
    pub max_pq: Option<usize>,
}

pub fn run_verify(target: VerifyTarget, bounds: VerifyBounds, cap: usize) -> Result<VerificationReport> {
    Ok(match target {
        VerifyTarget::DegreesAbelian => {
            verify::verify_degrees_abelian(bounds.max_order.unwrap_or(verify::DEFAULT_MAX_ORDER), cap)?
        }
        VerifyTarget::DegreesDihedral => {
            verify::verify_degrees_dihedral(bounds.max_n.unwrap_or(verify::DEFAULT_MAX_N), cap)?
        }
        VerifyTarget::Spectra => {
            verify::verify_spectra(bounds.max_order.unwrap_or(verify::DEFAULT_MAX_SPECTRUM_SIZE), cap)?
        }
        VerifyTarget::Block => verify::verify_block(bounds.max_pq.unwrap_or(verify::DEFAULT_MAX_PQ), cap)?,
    })
}

pub fn verify(target: VerifyTarget, bounds: VerifyBounds, cap: usize) -> Result<Outcome> {
    let report = run_verify(target, bounds, cap)?;
    Ok(Outcome {
        text: format!("{report}\n"),
        ok: report.passed(),
    })
}
