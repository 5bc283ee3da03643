//! The `walg` command line: argument parsing and the report pipelines behind each subcommand.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Algebra, AlgebraElement, GenIdx, GeneratorOrder, HbarPoly};
use crate::bk::BkContext;
use crate::error::{Error, Result};
use crate::geometry::{jc_closed_form, verify_inverse};
use crate::pyramid::Pyramid;
use crate::report::{Status, VerificationReport};
use crate::tensor_j::{
    compare_semiclassical, compute_j, semiclassical_from_asymptotic_parts, semiclassical_limit,
};
use crate::whittaker::{l_constant_part, Subregular};

#[derive(Parser, Debug)]
#[command(name = "walg", version, about = "Exact checks for subregular W-algebras of gl_N")]
struct Cli {
    /// Exit with status 1 when any check fails.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one (possibly truncated) T-element.
    #[command(name = "compute-T")]
    ComputeT {
        /// Pyramid as column heights ("1,3,2,1") or "subreg:N".
        #[arg(long)]
        pyramid: Pyramid,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        r: usize,
        /// Number of columns dropped from the right.
        #[arg(long, default_value_t = 0)]
        truncate: usize,
    },
    /// Build the subregular Whittaker vectors and test them against every m-generator.
    VerifyWhittaker {
        #[arg(long = "N")]
        n: usize,
        /// Also canonicalize and check the canonical form.
        #[arg(long)]
        canonical: bool,
    },
    /// Compute the monoidal matrix J on C^N ⊗ C^N.
    #[command(name = "compute-J")]
    ComputeJ {
        #[arg(long = "N")]
        n: usize,
        /// Include the semi-classical limit j.
        #[arg(long)]
        semiclassical: bool,
        /// Compare j with the reference closed forms.
        #[arg(long)]
        compare: bool,
    },
    /// Check the wonderbolic form and its inverse.
    CheckOmega {
        #[arg(long = "N")]
        n: usize,
    },
    /// Run every internal consistency suite at one N.
    Selftest {
        #[arg(long = "N")]
        n: usize,
    },
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    let outcome = match &cli.command {
        Command::ComputeT {
            pyramid,
            i,
            j,
            x,
            r,
            truncate,
        } => compute_t_report(pyramid, *i, *j, *x, *r, *truncate).map(|rep| (rep, true)),
        Command::VerifyWhittaker { n, canonical } => {
            verify_whittaker_report(*n, *canonical).map(|rep| (rep, true))
        }
        Command::ComputeJ {
            n,
            semiclassical,
            compare,
        } => compute_j_report(*n, *semiclassical, *compare).map(|rep| {
            let ok = rep.check("structure").is_some_and(|c| c.status == Status::Pass);
            (rep, ok)
        }),
        Command::CheckOmega { n } => check_omega_report(*n).map(|rep| (rep, true)),
        Command::Selftest { n } => selftest_report(*n).map(|rep| (rep, true)),
    };
    let (report, structural_ok) = match outcome {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return if matches!(e, Error::Validation(_)) { 2 } else { 1 };
        }
    };
    match cli.format {
        Format::Table => print!("{}", report.render_table()),
        Format::Json => println!("{}", report.to_json_string()),
    }
    if let Some(path) = &cli.out {
        if let Err(e) = report.save(path) {
            eprintln!("error: {e}");
            return 1;
        }
    }
    if !structural_ok || (cli.strict && !report.passed()) {
        1
    } else {
        0
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("WALG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("WALG_THREADS must be a positive integer, got {v:?}"))?;
    // A pool may already exist when `run` is called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn subregular_fingerprint(n: usize) -> Result<String> {
    Ok(GeneratorOrder::canonical_subregular(n)?.fingerprint())
}

/// `compute-T`: the element, its Kazhdan degree, and for `r = 1` on the full pyramid a
/// comparison with the explicit degree-one formula.
pub fn compute_t_report(
    pyramid: &Pyramid,
    i: usize,
    j: usize,
    x: usize,
    r: usize,
    truncate: usize,
) -> Result<VerificationReport> {
    let bk = BkContext::with_default_order(pyramid.clone())?;
    let mut rep = VerificationReport::new(
        "compute-T",
        pyramid.n_blocks(),
        &pyramid.to_string(),
        bk.algebra().order().fingerprint(),
    );
    let t = bk.truncated_t(truncate, i, j, x, r)?;
    rep.push(
        "element",
        Status::Info,
        json!({"label": t.label(), "terms": t.value.len(), "kazhdan_degree": t.degree, "value": t.value.to_string()}),
    );
    if let Some(d) = t.degree {
        rep.push(
            "kazhdan_degree",
            Status::from_bool(d <= r as i64),
            json!({"degree": d, "r": r}),
        );
    }
    if r == 1 && truncate == 0 {
        let closed = bk.t1_closed_form(i, j);
        let diff = t.value.try_sub(&closed)?;
        rep.push(
            "degree_one_formula",
            Status::from_bool(diff.is_zero()),
            json!(diff.to_string()),
        );
    }
    rep.payload = serde_json::to_value(t.value.to_json())?;
    Ok(rep)
}

fn generators_json(per: &[(GenIdx, bool)]) -> Value {
    Value::Object(per.iter().map(|(g, ok)| (g.to_string(), json!(ok))).collect())
}

/// `verify-whittaker`: every `ṽ_i` against every `m`-generator, optionally the canonical basis.
pub fn verify_whittaker_report(n: usize, canonical: bool) -> Result<VerificationReport> {
    let sub = Subregular::new(n)?;
    let space = sub.space().clone();
    let mut rep =
        VerificationReport::new("verify-whittaker", n, &format!("subreg:{n}"), subregular_fingerprint(n)?);
    let t12 = if n > 2 {
        let cands = sub.t12_candidates()?;
        rep.push(
            "t12_exponent",
            Status::Info,
            json!(cands.iter().map(|(c, ok)| json!({"exponent": c.label(), "whittaker": ok})).collect::<Vec<_>>()),
        );
        sub.resolve_t12()?
    } else {
        crate::whittaker::T12Exponent::NMinusIMinus2
    };
    for idx in 1..=n {
        let j = n - idx;
        rep.run_check(&format!("v{idx}"), || {
            let v = if idx == 1 && n > 1 { sub.tilde_v1(t12)? } else { sub.tilde_v(j)? };
            let chk = space.is_whittaker(&v)?;
            let witness = json!({
                "generators": generators_json(&chk.per_generator),
                "residue": chk.witness.as_ref().map(|(g, r)| format!("{g}: {r}")),
            });
            Ok((Status::from_bool(chk.passed()), witness))
        })?;
    }
    let mut payload = json!({});
    if canonical {
        let basis = sub.canonical_basis()?;
        for idx in 1..=n {
            rep.run_check(&format!("canonical_v{idx}"), || {
                let chk = space.is_whittaker(basis.vector(idx))?;
                Ok((Status::from_bool(chk.passed()), generators_json(&chk.per_generator)))
            })?;
        }
        rep.run_check("canonical_form", || {
            Ok((Status::from_bool(sub.is_canonical(&basis)?), Value::Null))
        })?;
        rep.run_check("support_gl_j_minus_1", || {
            let bad: Vec<String> = sub
                .truncated_support(&basis, 1)?
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|((i, j), _)| format!("x_{i}^{j}"))
                .collect();
            Ok((Status::from_bool(bad.is_empty()), json!(bad)))
        })?;
        let literal: Vec<String> = sub
            .truncated_support(&basis, 0)?
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|((i, j), _)| format!("x_{i}^{j}"))
            .collect();
        rep.push("support_gl_j_minus_2", Status::Info, json!({"outside": literal}));
        payload = json!({
            "canonical": (1..=n).map(|i| serde_json::to_value(basis.vector(i).to_json())).collect::<std::result::Result<Vec<_>, _>>()?,
        });
    }
    rep.payload = payload;
    Ok(rep)
}

/// `compute-J`: `J − id`, its structure, and optionally `j` and the comparison with the
/// closed forms. The `structure` check decides the exit status.
pub fn compute_j_report(n: usize, semiclassical: bool, compare: bool) -> Result<VerificationReport> {
    let sub = Subregular::new(n)?;
    if n < 2 {
        return Err(Error::Validation("compute-J needs N >= 2".into()));
    }
    let mut rep =
        VerificationReport::new("compute-J", n, &format!("subreg:{n}"), subregular_fingerprint(n)?);
    let mut out = None;
    rep.run_check("compute", || {
        let basis = sub.canonical_basis()?;
        let c = compute_j(&sub, &basis)?;
        let entries = c.j.entries.len();
        out = Some((basis, c.j));
        Ok((Status::Info, json!({"nonzero_entries": entries})))
    })?;
    let (basis, j) = out.expect("set by the compute check");
    let st = j.structure();
    rep.push("structure", Status::from_bool(st.passed()), serde_json::to_value(&st)?);
    let mut payload = json!({"J": serde_json::to_value(j.to_json())?});
    if semiclassical || compare {
        let lim = semiclassical_limit(&j)?;
        let oracle = semiclassical_from_asymptotic_parts(&basis)?;
        rep.push(
            "asymptotic_recomputation",
            Status::from_bool(oracle == lim),
            json!(oracle.render()),
        );
        rep.push("j", Status::Info, json!(lim.render()));
        payload["j"] = serde_json::to_value(lim.to_json())?;
        if compare {
            let cmp = compare_semiclassical(&lim)?;
            rep.push(
                "constant_part_is_jc",
                Status::from_bool(cmp.constant_part_matches_jc),
                json!(jc_closed_form(n)?.render()),
            );
            rep.push(
                "closed_form_convention",
                Status::from_bool(cmp.matches_statement || cmp.matches_proof),
                json!({"matched": cmp.matched, "diffs": cmp.diffs}),
            );
        }
    }
    rep.payload = payload;
    Ok(rep)
}

/// `check-omega`: non-degeneracy, isotropy, and both descriptions of `j_c` as inverses of `ω`.
pub fn check_omega_report(n: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("check-omega", n, &format!("subreg:{n}"), subregular_fingerprint(n)?);
    let r = verify_inverse(n)?;
    rep.push("antisymmetric", Status::from_bool(r.antisymmetric), Value::Null);
    rep.push(
        "nondegenerate",
        Status::from_bool(r.nondegenerate),
        json!({"determinant": r.determinant, "dim_w": r.dim_w}),
    );
    rep.push("m_isotropic", Status::from_bool(r.m_isotropic), json!({"dim_m": r.dim_m}));
    rep.push("b_isotropic", Status::from_bool(r.b_isotropic), json!({"dim_b": r.dim_b}));
    rep.push(
        "recursive_equals_closed",
        Status::from_bool(r.recursive_equals_closed),
        json!(r.jc_diff),
    );
    rep.push(
        "inverse_closed_form",
        Status::from_bool(r.inverse_ok_closed),
        json!(r.defects_closed),
    );
    rep.push(
        "inverse_recursive",
        Status::from_bool(r.inverse_ok_recursive),
        json!(r.defects_recursive),
    );
    rep.payload = serde_json::to_value(&r)?;
    Ok(rep)
}

/// PBW associativity and Jacobi on all generator triples of `gl_n`.
fn engine_health(n: usize) -> Result<(Status, Value)> {
    let alg = Algebra::lex(n);
    let gens: Vec<AlgebraElement> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| AlgebraElement::generator(&alg, i, j))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for a in &gens {
        for b in &gens {
            let ab = a.try_mul(b)?;
            for c in &gens {
                cases += 1;
                if ab.try_mul(c)? != a.try_mul(&b.try_mul(c)?)? {
                    failures.push(format!("assoc {a} {b} {c}"));
                }
                let jac = a
                    .commutator(&b.commutator(c)?)?
                    .try_add(&b.commutator(&c.commutator(a)?)?)?
                    .try_add(&c.commutator(&a.commutator(b)?)?)?;
                if !jac.is_zero() {
                    failures.push(format!("jacobi {a} {b} {c}"));
                }
            }
        }
    }
    Ok((Status::from_bool(failures.is_empty()), json!({"cases": cases, "failures": failures})))
}

/// `selftest`: engine, generators, Whittaker vectors, truncation identities, `J` and `ω` at one `N`.
pub fn selftest_report(n: usize) -> Result<VerificationReport> {
    let sub = Subregular::new(n)?;
    let mut rep = VerificationReport::new("selftest", n, &format!("subreg:{n}"), subregular_fingerprint(n)?);
    rep.run_check("engine", || engine_health(n.min(4)))?;
    rep.run_check("t11", || {
        let t = sub.bk().t_element(1, 1, 0, 1)?.value;
        let alg = sub.algebra();
        let want = AlgebraElement::generator(alg, 1, 1)?
            .try_sub(&AlgebraElement::hbar(alg).scale(&HbarPoly::int(n as i64 - 2)))?;
        Ok((Status::from_bool(t == want), json!(t.to_string())))
    })?;
    rep.run_check("degree_one_formula", || {
        let bk = sub.bk();
        let rows = bk.pyramid().n_rows();
        let mut bad = Vec::new();
        for i in 1..=rows {
            for j in 1..=rows {
                for x in 0..=rows {
                    let t = bk.t_element(i, j, x, 1)?;
                    if t.value != bk.t1_closed_form(i, j) {
                        bad.push(t.label());
                    }
                }
            }
        }
        Ok((Status::from_bool(bad.is_empty()), json!(bad)))
    })?;
    let whit = verify_whittaker_report(n, true)?;
    let ok = whit.passed();
    rep.push(
        "whittaker",
        Status::from_bool(ok),
        json!({"failures": whit.failures()}),
    );
    let t12 = if n > 2 {
        sub.resolve_t12()?
    } else {
        crate::whittaker::T12Exponent::NMinusIMinus2
    };
    rep.run_check("l_constant_divisible", || {
        let bad: Vec<String> = sub
            .t_elements_in_use(t12)?
            .iter()
            .filter(|t| l_constant_part(&t.value).div_hbar().is_none())
            .map(|t| t.label())
            .collect();
        Ok((Status::from_bool(bad.is_empty()), json!(bad)))
    })?;
    if n >= 4 {
        rep.run_check("truncation_identities", || {
            let bad: Vec<String> = sub
                .recursion_checks()?
                .into_iter()
                .filter(|c| !(c.relation && c.ecommute))
                .map(|c| format!("i={} r={} relation={} ecommute={}", c.i, c.r, c.relation, c.ecommute))
                .collect();
            Ok((Status::from_bool(bad.is_empty()), json!(bad)))
        })?;
    }
    if (3..=5).contains(&n) {
        let j = compute_j_report(n, true, true)?;
        for name in ["structure", "asymptotic_recomputation", "constant_part_is_jc", "closed_form_convention"] {
            if let Some(c) = j.check(name) {
                rep.push(&format!("J_{name}"), c.status, c.witness.clone());
            }
        }
    }
    if n >= 3 {
        let om = check_omega_report(n)?;
        rep.push(
            "omega",
            Status::from_bool(om.passed()),
            json!({"failures": om.failures()}),
        );
    }
    Ok(rep)
}
