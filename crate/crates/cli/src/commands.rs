use skewpbw::convert::build_conversion_iso;
use skewpbw::corpus::{run_example, CORPUS};
use skewpbw::enumerate::{enumerate_instances, EnumerationMode, EnumerationSpec};
use skewpbw::hochschild::{check_homological, lift_to_deformation, LiftMode};
use skewpbw::instance::Instance;
use skewpbw::params::{validate_structural, KappaParam};
use skewpbw::pbw::{check_pbw, Residual, Witness};
use skewpbw::rewrite::{
    extract_mu, filtered_dimensions, iso_search as search, letter_name, plain_kappa_sources,
    resolve_ambiguities, Grading, Normalizer, ReductionSystem, SourceAlgebra,
};
use skewpbw::SkewElem;

use crate::report::Report;
use crate::{load, CliError};

fn header(r: &mut Report, inst: &Instance, spec: &str) {
    let grp = inst.rep.group();
    let name = inst.name.as_deref().unwrap_or(spec);
    r.line(format!(
        "instance: {name} ({}, |G| = {}, dim V = {})",
        inst.field(),
        grp.order(),
        inst.rep.dim()
    ));
    r.field("instance", name);
    r.field("field", inst.field());
    r.field("group_order", grp.order());
    r.field("dim", inst.rep.dim());
    r.entry("digest", "digest", inst.digest());
}

fn plain<'a>(inst: &'a Instance, what: &str) -> Result<&'a KappaParam, CliError> {
    inst.plain_kappa()
        .ok_or_else(|| CliError::Other(format!("{what} needs kappa with values in kG")))
}

fn render(inst: &Instance, x: &SkewElem) -> String {
    x.render(&inst.basis, inst.rep.group())
}

fn witness_text(inst: &Instance, w: &Witness) -> String {
    let grp = inst.rep.group();
    let elems: Vec<&str> = w.groups.iter().map(|&g| grp.name(g)).collect();
    let vecs: Vec<&str> = w.basis.iter().map(|&i| inst.basis[i].as_str()).collect();
    let residual = match &w.residual {
        Residual::Group(x) => render(inst, &SkewElem::from_group_algebra(x, inst.rep.dim())),
        Residual::Vector(v) => render(inst, &SkewElem::vector(v, grp.identity())),
    };
    format!(
        "elements ({}), vectors ({}), residual {residual}",
        elems.join(", "),
        vecs.join(", ")
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PBW"
    } else {
        "not PBW"
    }
}

pub fn check(spec: &str, random: usize, seed: u64) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("check");
    header(&mut r, &inst, spec);
    let kappa = plain(&inst, "check")?;
    let report = check_pbw(&inst.lambda, kappa, &inst.rep)?;
    for c in &report.conditions {
        let status = if c.holds() { "pass" } else { "fail" };
        r.line(format!(
            "condition {}: {status} ({} tuples, {} failures)",
            c.id, c.checked, c.failures
        ));
        r.field(format!("condition.{}", c.id), status);
        r.field(format!("condition.{}.checked", c.id), c.checked);
        r.field(format!("condition.{}.failures", c.id), c.failures);
        if let Some(w) = &c.witness {
            let text = witness_text(&inst, w);
            r.line(format!("  witness: {text}"));
            r.field(format!("condition.{}.witness", c.id), text);
        }
    }
    if report.holds() {
        let structural = validate_structural(&inst.lambda, kappa, &inst.rep)?;
        let summary = match structural.violations.len() {
            0 => "clean".to_string(),
            n => format!("{n} violations"),
        };
        r.entry("structural", "structural", summary);
        for (k, v) in structural.violations.iter().enumerate() {
            r.line(format!("  {v}"));
            r.field(format!("structural.{k}"), v);
        }
        r.require(structural.is_clean());
    }
    r.entry("verdict", "verdict", verdict(report.holds()));
    r.require(report.holds());

    if random > 0 {
        let spec = EnumerationSpec::all_slots(&inst.rep, EnumerationMode::Random { count: random });
        let mut disagreements = 0;
        for (k, (lambda, kappa)) in enumerate_instances(&spec, seed)?.enumerate() {
            let conditions = check_pbw(&lambda, &kappa, &inst.rep)?.holds();
            let sys = ReductionSystem::from_plain(&inst.rep, &lambda, &kappa, Grading::Untwisted)?;
            let oracle = resolve_ambiguities(&sys).is_confluent();
            if conditions != oracle {
                disagreements += 1;
                r.line(format!(
                    "  random instance {k}: conditions say {}, oracle says {}",
                    verdict(conditions),
                    verdict(oracle)
                ));
                r.field(
                    format!("random.disagreement.{k}"),
                    format!("{}/{}", verdict(conditions), verdict(oracle)),
                );
            }
        }
        r.line(format!(
            "random cross-check: {random} instances, {disagreements} disagreements"
        ));
        r.field("random.count", random);
        r.field("random.disagreements", disagreements);
        r.require(disagreements == 0);
    }
    Ok(r)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn oracle(spec: &str, max_degree: u32) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("oracle");
    header(&mut r, &inst, spec);
    let sys = inst.reduction_system(Grading::Untwisted)?;
    let amb = resolve_ambiguities(&sys);
    let unresolved = amb.failures().count();
    r.line(format!(
        "ambiguities: {} checked, {unresolved} unresolved",
        amb.ambiguities.len()
    ));
    r.field("ambiguities.checked", amb.ambiguities.len());
    r.field("ambiguities.unresolved", unresolved);
    if let Some(a) = amb.first_failure() {
        let names = inst.rep.group().names();
        let word: Vec<String> = a
            .word
            .iter()
            .map(|&l| letter_name(l, &inst.basis, names))
            .collect();
        let text = format!("{} leaves {}", word.join(" "), render(&inst, &a.difference));
        r.entry("ambiguities.first_unresolved", "first unresolved", text);
    }
    let dims = filtered_dimensions(&sys, max_degree)?;
    let order = inst.rep.group().order() as u64;
    let m = inst.rep.dim() as u64;
    let expected: Vec<u64> = (0..=u64::from(max_degree))
        .map(|n| order * binomial(n + m, m))
        .collect();
    let join = |v: &[String]| v.join(" ");
    let dims_text = join(&dims.iter().map(ToString::to_string).collect::<Vec<_>>());
    let expected_text = join(&expected.iter().map(ToString::to_string).collect::<Vec<_>>());
    r.entry(
        "filtered_dimensions",
        &format!("filtered dimensions F_0..F_{max_degree}"),
        dims_text,
    );
    r.entry("pbw_dimensions", "PBW dimensions", expected_text);
    let confluent = amb.is_confluent();
    r.entry("verdict", "verdict", verdict(confluent));
    r.require(confluent);
    Ok(r)
}

pub fn homology(spec: &str) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("homology");
    header(&mut r, &inst, spec);
    let kappa = plain(&inst, "homology")?;
    let report = check_homological(&inst.lambda, kappa, &inst.rep)?;
    let grp = inst.rep.group();
    for (k, s) in report
        .identities
        .iter()
        .chain(std::iter::once(&report.literal_bracket_identity))
        .enumerate()
    {
        let literal = k == report.identities.len();
        let status = if s.holds() { "pass" } else { "fail" };
        let label = if literal {
            format!("{} (literal, no halving)", s.name)
        } else {
            s.name.to_string()
        };
        r.line(format!(
            "{label}: {status} ({} of {} basis elements nonzero)",
            s.failures, s.checked
        ));
        let key = if literal {
            "identity.literal".to_string()
        } else {
            format!("identity.{}", k + 1)
        };
        r.field(format!("{key}.name"), s.name);
        r.field(key.clone(), status);
        r.field(format!("{key}.nonzero"), s.failures);
        if let Some((mid, v)) = &s.witness {
            let text = format!(
                "{}: {}",
                mid.render(&inst.rep, &inst.basis),
                v.render(&inst.basis, grp)
            );
            r.line(format!("  at {text}"));
            r.field(format!("{key}.witness"), text);
        }
    }
    r.entry("verdict", "verdict", verdict(report.holds()));
    r.require(report.holds());
    Ok(r)
}

pub fn convert(spec: &str) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("convert");
    header(&mut r, &inst, spec);
    if !plain(&inst, "convert")?.is_zero() {
        return Err(CliError::Other(
            "convert expects an instance with kappa = 0".into(),
        ));
    }
    let iso = build_conversion_iso(&inst.lambda, &inst.rep)?;
    let m = inst.rep.dim();
    for (i, b) in inst.basis.iter().enumerate() {
        let g = render(&inst, &SkewElem::from_group_algebra(iso.gamma.get(i), m));
        r.entry(format!("gamma.{b}"), &format!("gamma({b})"), g);
    }
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (&inst.basis[i], &inst.basis[j]);
            let k = render(
                &inst,
                &SkewElem::from_group_algebra(&iso.kappa.get(i, j), m),
            );
            r.entry(format!("kappa.{a}.{b}"), &format!("kappa({a}, {b})"), k);
        }
    }
    let status = |f: &Option<skewpbw::rewrite::HomFailure>| match f {
        None => "verified".to_string(),
        Some(f) => format!(
            "fails on {} (residual {})",
            f.relation,
            render(&inst, &f.residual)
        ),
    };
    r.entry(
        "forward",
        "f: H_{0,kappa} -> H_{lambda,0}",
        status(&iso.forward_failure),
    );
    r.entry(
        "inverse",
        "f^-1: H_{lambda,0} -> H_{0,kappa}",
        status(&iso.inverse_failure),
    );
    let composites = if iso.composite_failures.is_empty() {
        "identity on generators".to_string()
    } else {
        format!("differ at {}", iso.composite_failures.join(", "))
    };
    r.entry("composites", "composites", composites);
    r.entry(
        "verdict",
        "verdict",
        if iso.is_verified() {
            "verified"
        } else {
            "failed"
        },
    );
    r.require(iso.is_verified());
    Ok(r)
}

pub fn iso_search(spec: &str, target: Option<&str>) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("iso-search");
    let (target_inst, sources) = match target {
        None => {
            let sources = plain_kappa_sources(&inst.rep)?;
            (inst.clone(), sources)
        }
        Some(t) => {
            let target_inst = load(t)?;
            if target_inst.rep != inst.rep {
                return Err(CliError::Other(
                    "source and target must share the representation".into(),
                ));
            }
            let source = SourceAlgebra {
                label: inst.name.clone().unwrap_or_else(|| spec.to_string()),
                lambda: inst.lambda.clone(),
                kappa: inst.general_kappa(),
            };
            (target_inst, vec![source])
        }
    };
    header(&mut r, &target_inst, target.unwrap_or(spec));
    r.entry("sources", "sources", sources.len());
    let sys = target_inst.reduction_system(Grading::Untwisted)?;
    let result = search(&sys, &sources)?;
    r.entry("candidates", "candidates", result.candidates);
    r.line(format!("{} isomorphisms found", result.found.len()));
    r.field("found", result.found.len());
    let grp = target_inst.rep.group();
    for (k, f) in result.found.iter().enumerate() {
        let images: Vec<String> = grp
            .generators()
            .iter()
            .map(|&g| grp.name(g).to_string())
            .zip(&f.generator_images)
            .chain(target_inst.basis.iter().cloned().zip(&f.vector_images))
            .map(|(x, img)| format!("{x} -> {}", render(&target_inst, img)))
            .collect();
        let text = format!("from {}: {}", f.source_label, images.join(", "));
        r.line(format!("  {text}"));
        r.field(format!("found.{k}"), text);
    }
    Ok(r)
}

pub fn mu_extract(spec: &str, degree: u32) -> Result<Report, CliError> {
    let inst = load(spec)?;
    let mut r = Report::new("mu-extract");
    header(&mut r, &inst, spec);
    let kappa = plain(&inst, "mu-extract")?;
    let deformation = lift_to_deformation(&inst.lambda, kappa, &inst.rep, LiftMode::Graded)?;
    let rep = &inst.rep;
    let grp = rep.group();
    let f = rep.field();
    let m = rep.dim();
    let letters: Vec<(String, SkewElem)> = (0..m)
        .map(|i| {
            (
                inst.basis[i].clone(),
                SkewElem::basis_vector(f, m, i, grp.identity()),
            )
        })
        .chain(
            (0..grp.order())
                .map(|g| (grp.name(g).to_string(), SkewElem::group_elem(m, g, f.one()))),
        )
        .collect();
    let mut norm = Normalizer::new(&deformation.system);
    for j in 1..=degree {
        let mut nonzero = 0;
        for (a, x) in &letters {
            for (b, y) in &letters {
                let mu = extract_mu(&mut norm, j, x, y)?;
                if !mu.is_zero() {
                    nonzero += 1;
                    let text = render(&inst, &mu);
                    r.line(format!("mu_{j}({a}, {b}) = {text}"));
                    r.field(format!("mu.{j}.{a}.{b}"), text);
                }
            }
        }
        r.field(format!("mu.{j}.nonzero"), nonzero);
    }
    let lambda_ok = deformation.lambda == inst.lambda;
    let kappa_ok = &deformation.kappa == kappa;
    let says = |ok: bool| if ok { "matches" } else { "differs" };
    r.entry("recovered.lambda", "lambda from mu_1", says(lambda_ok));
    r.entry("recovered.kappa", "kappa from mu_2", says(kappa_ok));
    r.require(lambda_ok && kappa_ok);
    Ok(r)
}

pub fn examples_list() -> Result<Report, CliError> {
    let mut r = Report::new("examples list");
    let width = CORPUS.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in CORPUS {
        r.line(format!("{:width$}  {}", e.name, e.summary));
        r.field(format!("entry.{}", e.name), e.summary);
    }
    Ok(r)
}

pub fn examples_run(name: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("examples run");
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => CORPUS.iter().map(|e| e.name).collect(),
    };
    for n in names {
        let report = run_example(n)?;
        r.field(format!("{n}.digest"), &report.digest);
        for c in &report.checks {
            let mark = if c.passed() { "ok" } else { "MISMATCH" };
            r.line(format!(
                "{n}: {}: expected {}, got {} [{mark}]",
                c.label, c.expected, c.actual
            ));
            r.field(format!("{n}.{}", c.label.replace(' ', "_")), &c.actual);
            r.field(
                format!("{n}.{}.expected", c.label.replace(' ', "_")),
                &c.expected,
            );
        }
        r.require(report.passed());
    }
    Ok(r)
}
