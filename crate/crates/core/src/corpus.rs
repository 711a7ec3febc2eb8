//! Built-in instances with their known verdicts.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::convert::build_conversion_iso;
use crate::error::{Error, Result};
use crate::hochschild::check_homological;
use crate::instance::{verify_map, Instance};
use crate::params::validate_structural;
use crate::pbw::check_pbw;
use crate::rewrite::{iso_search, plain_kappa_sources, resolve_ambiguities, Grading};

/// What running every applicable check on an entry should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub pbw: bool,
    /// The nonmodular conversion `H_{λ,0} ≅ H_{0,κ}` applies and verifies.
    pub conversion: bool,
    /// Number of isomorphisms `H_{0,κ'} → H_{λ,κ}` the exhaustive search finds.
    pub isomorphisms: Option<usize>,
    /// The entry carries a `[map]` that verifies.
    pub map: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub expected: Expected,
}

const PBW: Expected = Expected {
    pbw: true,
    conversion: false,
    isomorphisms: None,
    map: false,
};

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "cyclic-p2",
        summary: "Z/2 unipotent over F_2, lambda(g^i, w) = i g^(i-1), kappa(v, w) = g",
        expected: PBW,
    },
    CorpusEntry {
        name: "cyclic-p3",
        summary: "Z/3 unipotent over F_3, lambda(g^i, w) = i g^(i-1), kappa(v, w) = g",
        expected: PBW,
    },
    CorpusEntry {
        name: "cyclic-p5",
        summary: "Z/5 unipotent over F_5, lambda(g^i, w) = i g^(i-1), kappa(v, w) = g",
        expected: PBW,
    },
    CorpusEntry {
        name: "cyclic-p7",
        summary: "Z/7 unipotent over F_7, lambda(g^i, w) = i g^(i-1), kappa(v, w) = g",
        expected: PBW,
    },
    CorpusEntry {
        name: "modular-counterexample",
        summary: "Z/2 unipotent over F_2 with lambda as in cyclic-p2 and kappa = 0; no H_{0,kappa'} is isomorphic",
        expected: Expected {
            isomorphisms: Some(0),
            ..PBW
        },
    },
    CorpusEntry {
        name: "general-kappa-fix",
        summary: "H_{0,kappa'} with kappa'(v, w) = g - v g^-1, and the map v -> v - g^-1 from cyclic-p2",
        expected: Expected { map: true, ..PBW },
    },
    CorpusEntry {
        name: "s3-coxeter-q",
        summary: "S3 reflection representation over Q, graded affine Hecke lambda with c = 1, kappa = 0",
        expected: Expected {
            conversion: true,
            ..PBW
        },
    },
    CorpusEntry {
        name: "d4-coxeter-q",
        summary: "dihedral group of order 8 over Q, graded affine Hecke lambda with c = (1, 2), kappa = 0",
        expected: Expected {
            conversion: true,
            ..PBW
        },
    },
    CorpusEntry {
        name: "z3-rotation-q",
        summary: "Z/3 acting by rotation on Q^2, lambda = 0, kappa(x, y) = 1",
        expected: PBW,
    },
    CorpusEntry {
        name: "skew-trivial",
        summary: "Z/3 unipotent over F_3 with lambda = kappa = 0, i.e. S(V)#G itself",
        expected: PBW,
    },
    CorpusEntry {
        name: "bad-identity-lambda",
        summary: "Z/3 unipotent over F_3 with lambda(1, v) = 1; fails condition 1 at g = h = 1",
        expected: Expected { pbw: false, ..PBW },
    },
];

fn header(name: &str, summary: &str, characteristic: u64, basis: &str) -> String {
    format!("[meta]\nname = {name}\ndescription = {summary}\n\n[field]\ncharacteristic = {characteristic}\n\n[space]\nbasis = {basis}\n\n")
}

const UNIPOTENT: &str = "[group]\ngenerators = g\ng = [[1, 1], [0, 1]]\n";

/// `λ(g^i, w) = i g^{i−1}` over `F_p`, in rendered form.
fn cyclic_lambda(p: u64) -> String {
    let mut out = String::from("\n[lambda]\n");
    for i in 1..p {
        let elem = match i {
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        };
        let value = match i {
            1 => "1".to_string(),
            2 => "2 g".to_string(),
            _ => format!("{i} g^{}", i - 1),
        };
        let _ = writeln!(out, "{elem} w = {value}");
    }
    out
}

fn text(entry: &CorpusEntry) -> String {
    let head =
        |characteristic: u64, basis: &str| header(entry.name, entry.summary, characteristic, basis);
    match entry.name {
        "cyclic-p2" | "cyclic-p3" | "cyclic-p5" | "cyclic-p7" => {
            let p: u64 = entry.name["cyclic-p".len()..]
                .parse()
                .expect("prime suffix");
            format!(
                "{}{UNIPOTENT}{}\n[kappa]\nv w = g\n",
                head(p, "v w"),
                cyclic_lambda(p)
            )
        }
        "modular-counterexample" => format!("{}{UNIPOTENT}{}", head(2, "v w"), cyclic_lambda(2)),
        "general-kappa-fix" => format!(
            "{}{UNIPOTENT}\n[general-kappa]\nv w = g + v g\n\n[source-lambda]\ng w = 1\n\n\
             [source-kappa]\nv w = g\n\n[map]\ng = g\nv = g + v\nw = w\n\n\
             [inverse-map]\ng = g\nv = g + v\nw = w\n",
            head(2, "v w")
        ),
        "s3-coxeter-q" => format!(
            "{}[group]\ngenerators = s t\ns = [[-1, 1], [0, 1]]\nt = [[1, 0], [1, -1]]\n\n\
             [coxeter]\ns = 1 0 ; 1\nt = 0 1 ; 1\n",
            head(0, "x y")
        ),
        "d4-coxeter-q" => format!(
            "{}[group]\ngenerators = a b\na = [[0, 1], [1, 0]]\nb = [[1, 0], [0, -1]]\n\n\
             [coxeter]\na = 1 -1 ; 1\nb = 0 1 ; 2\n",
            head(0, "x y")
        ),
        "z3-rotation-q" => format!(
            "{}[group]\ngenerators = r\nr = [[0, -1], [1, -1]]\n\n[kappa]\nx y = 1\n",
            head(0, "x y")
        ),
        "skew-trivial" => format!("{}{UNIPOTENT}", head(3, "v w")),
        "bad-identity-lambda" => format!("{}{UNIPOTENT}\n[lambda]\ne v = 1\n", head(3, "v w")),
        other => unreachable!("corpus entry {other} has no text"),
    }
}

pub fn corpus_names() -> Vec<&'static str> {
    CORPUS.iter().map(|e| e.name).collect()
}

pub fn corpus_entry(name: &str) -> Result<&'static CorpusEntry> {
    CORPUS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpus {
            name: name.to_string(),
            available: corpus_names().join(", "),
        })
}

/// The canonical instance file of a corpus entry.
pub fn corpus_text(name: &str) -> Result<String> {
    corpus_entry(name).map(text)
}

pub fn corpus_get(name: &str) -> Result<Instance> {
    Instance::parse(&corpus_text(name)?)
}

#[derive(Clone, Debug)]
pub struct ExampleCheck {
    pub label: &'static str,
    pub expected: String,
    pub actual: String,
    pub elapsed: Duration,
}

impl ExampleCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub name: String,
    pub digest: String,
    pub checks: Vec<ExampleCheck>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ExampleCheck::passed)
    }
}

fn verdict(ok: bool, yes: &str, no: &str) -> String {
    if ok { yes } else { no }.to_string()
}

/// Runs every check that applies to the entry and pairs each outcome with
/// the documented one.
pub fn run_example(name: &str) -> Result<ExampleReport> {
    let entry = corpus_entry(name)?;
    let inst = corpus_get(name)?;
    let exp = entry.expected;
    let rep = &inst.rep;
    let mut checks = Vec::new();
    let mut timed = |label: &'static str,
                     expected: String,
                     f: &mut dyn FnMut() -> Result<String>|
     -> Result<()> {
        let start = Instant::now();
        let actual = f()?;
        checks.push(ExampleCheck {
            label,
            expected,
            actual,
            elapsed: start.elapsed(),
        });
        Ok(())
    };
    let pbw = verdict(exp.pbw, "PBW", "not PBW");

    if let Some(kappa) = inst.plain_kappa() {
        timed("pbw conditions", pbw.clone(), &mut || {
            Ok(verdict(
                check_pbw(&inst.lambda, kappa, rep)?.holds(),
                "PBW",
                "not PBW",
            ))
        })?;
        timed("homological", pbw.clone(), &mut || {
            Ok(verdict(
                check_homological(&inst.lambda, kappa, rep)?.holds(),
                "PBW",
                "not PBW",
            ))
        })?;
        if exp.pbw {
            timed("structural", "clean".into(), &mut || {
                let report = validate_structural(&inst.lambda, kappa, rep)?;
                Ok(verdict(report.is_clean(), "clean", "violations"))
            })?;
        }
    }
    timed("rewrite oracle", pbw, &mut || {
        let sys = inst.reduction_system(Grading::Untwisted)?;
        Ok(verdict(
            resolve_ambiguities(&sys).is_confluent(),
            "PBW",
            "not PBW",
        ))
    })?;
    if exp.conversion {
        timed("conversion", "verified".into(), &mut || {
            Ok(verdict(
                build_conversion_iso(&inst.lambda, rep)?.is_verified(),
                "verified",
                "failed",
            ))
        })?;
    }
    if let Some(n) = exp.isomorphisms {
        timed("isomorphisms", n.to_string(), &mut || {
            let target = inst.reduction_system(Grading::Untwisted)?;
            let result = iso_search(&target, &plain_kappa_sources(rep)?)?;
            Ok(result.found.len().to_string())
        })?;
    }
    if exp.map {
        timed("map", "verified".into(), &mut || {
            Ok(verdict(
                verify_map(&inst)?.is_verified(),
                "verified",
                "failed",
            ))
        })?;
    }
    Ok(ExampleReport {
        name: name.to_string(),
        digest: inst.digest(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_canonical() {
        for entry in CORPUS {
            let text = corpus_text(entry.name).unwrap();
            let inst = Instance::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
            assert_eq!(inst.render(), text, "{}", entry.name);
            assert_eq!(inst.name.as_deref(), Some(entry.name));
        }
    }

    #[test]
    fn unknown_names_list_the_corpus() {
        match corpus_get("cyclic-p4") {
            Err(Error::UnknownCorpus { available, .. }) => assert!(available.contains("cyclic-p2")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
