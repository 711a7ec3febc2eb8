//! Line-oriented instance files.
//!
//! ```text
//! [field]
//! characteristic = 2
//!
//! [space]
//! basis = v w
//!
//! [group]
//! generators = g
//! g = [[1, 1], [0, 1]]
//!
//! [lambda]
//! g w = 1
//!
//! [kappa]
//! v w = g
//! ```
//!
//! `characteristic = 0` selects the rationals. Groups are given either by
//! matrix generators (closed under multiplication) or by `elements` plus a
//! multiplication table row per element and a `[representation]` section.
//! `λ` comes from exactly one of `[lambda]` (full table), `[lambda-seed]`
//! (values on some elements, extended by recursion) or `[coxeter]`
//! (`s = root ; c`). `κ` comes from `[kappa]` or `[general-kappa]`. A map
//! from another algebra `H_{λ',κ'}` into this one is described by
//! `[source-lambda]`, `[source-kappa]`, `[map]` and optionally
//! `[inverse-map]`.
//!
//! [`Instance::render`] is canonical: rendering a parsed rendering gives the
//! same bytes.

mod expr;
mod map;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

pub use expr::{
    parse_general_value, parse_group_algebra, parse_skew, render_group_algebra, ExprContext,
};
pub use map::{verify_map, MapReport};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_algebra::GroupAlgebraElem;
use crate::matrix::{Matrix, Vector};
use crate::params::{
    build_lambda_coxeter, extend_lambda_by_recursion, GeneralKappa, KappaParam, LambdaParam,
};
use crate::representation::{close_generators, Representation};
use crate::rewrite::{Grading, ReductionSystem};
use crate::scalar::{Field, Scalar};
use crate::skew::SkewElem;

/// Largest group accepted from matrix generators.
pub const GROUP_CAP: usize = 1024;

const SECTIONS: &[&str] = &[
    "meta",
    "field",
    "space",
    "group",
    "representation",
    "lambda",
    "lambda-seed",
    "coxeter",
    "kappa",
    "general-kappa",
    "source-lambda",
    "source-kappa",
    "map",
    "inverse-map",
];

#[derive(Clone, Debug)]
pub enum GroupInput {
    Generators {
        names: Vec<String>,
        matrices: Vec<Matrix>,
    },
    Table {
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        matrices: Vec<Matrix>,
    },
}

#[derive(Clone, Debug)]
pub enum LambdaInput {
    Zero,
    Table,
    Seed(BTreeMap<usize, Vec<GroupAlgebraElem>>),
    Coxeter {
        reflections: Vec<usize>,
        roots: Vec<Vector>,
        c: Vec<Scalar>,
    },
}

#[derive(Clone, Debug)]
pub enum KappaInput {
    Plain(KappaParam),
    General(GeneralKappa),
}

/// A map `H_{λ',κ'} → H_{λ,κ}` given on generators, with an optional
/// inverse given the same way.
#[derive(Clone, Debug)]
pub struct MapInput {
    pub source_lambda: LambdaParam,
    pub source_kappa: KappaParam,
    pub generator_images: Vec<SkewElem>,
    pub vector_images: Vec<SkewElem>,
    pub inverse: Option<(Vec<SkewElem>, Vec<SkewElem>)>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub description: Option<String>,
    pub basis: Vec<String>,
    pub group_input: GroupInput,
    pub rep: Representation,
    pub lambda_input: LambdaInput,
    pub lambda: LambdaParam,
    pub kappa: KappaInput,
    pub map: Option<MapInput>,
}

struct Entry {
    line: usize,
    key: String,
    value: String,
}

struct Section {
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn lookup(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, name: &str, key: &str) -> Result<&Entry> {
        self.lookup(key)
            .ok_or_else(|| Error::parse(self.line, format!("[{name}] needs '{key}'")))
    }

    fn only_keys(&self, allowed: &[&str]) -> Result<()> {
        match self
            .entries
            .iter()
            .find(|e| !allowed.contains(&e.key.as_str()))
        {
            Some(e) => Err(Error::parse(e.line, format!("unknown key '{}'", e.key))),
            None => Ok(()),
        }
    }
}

fn split_sections(text: &str) -> Result<HashMap<String, Section>> {
    let mut sections: HashMap<String, Section> = HashMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return Err(Error::parse(line, format!("unknown section [{name}]")));
            }
            if sections.contains_key(name) {
                return Err(Error::parse(line, format!("duplicate section [{name}]")));
            }
            sections.insert(
                name.to_string(),
                Section {
                    line,
                    entries: Vec::new(),
                },
            );
            current = Some(name.to_string());
            continue;
        }
        let section = current
            .as_ref()
            .ok_or_else(|| Error::parse(line, "entry before the first section header"))?;
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected 'key = value'"))?;
        let key = key.split_whitespace().collect::<Vec<_>>().join(" ");
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(Error::parse(line, "empty key"));
        }
        let sec = sections.get_mut(section).expect("current section exists");
        if sec.entries.iter().any(|e| e.key == key) {
            return Err(Error::parse(line, format!("duplicate key '{key}'")));
        }
        sec.entries.push(Entry { line, key, value });
    }
    Ok(sections)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn wrap(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { line: 0, message } => Error::Parse { line, message },
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

fn parse_matrix(text: &str, field: Field, line: usize) -> Result<Matrix> {
    let bad = || Error::parse(line, format!("malformed matrix '{text}'"));
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?
        .trim();
    let mut rows = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = body.find(']').ok_or_else(bad)?;
        let row = body[..close]
            .split(',')
            .map(|x| field.parse_scalar(x).map_err(wrap(line)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(bad());
            }
        } else if !rest.is_empty() {
            return Err(bad());
        }
    }
    if rows.is_empty() {
        return Err(bad());
    }
    Matrix::from_rows(field, rows).map_err(wrap(line))
}

fn parse_field(sec: &Section) -> Result<Field> {
    sec.only_keys(&["characteristic"])?;
    let e = sec.require("field", "characteristic")?;
    match e.value.parse::<u64>() {
        Ok(0) => Ok(Field::Rationals),
        Ok(p) => Field::prime(p).map_err(wrap(e.line)),
        Err(_) => Err(Error::parse(
            e.line,
            format!("bad characteristic '{}'", e.value),
        )),
    }
}

fn parse_group(
    sections: &HashMap<String, Section>,
    field: Field,
    dim: usize,
) -> Result<(GroupInput, Representation)> {
    let sec = sections
        .get("group")
        .ok_or_else(|| Error::parse(0, "missing [group] section"))?;
    let check_dim = |m: &Matrix, line: usize| -> Result<()> {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::parse(line, format!("expected a {dim}x{dim} matrix")));
        }
        Ok(())
    };
    let names_of = |e: &Entry| -> Result<Vec<String>> {
        let names: Vec<String> = e.value.split_whitespace().map(str::to_string).collect();
        if names.is_empty() {
            return Err(Error::parse(e.line, "no names given"));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) || !seen.insert(n) {
                return Err(Error::parse(e.line, format!("bad or repeated name '{n}'")));
            }
        }
        Ok(names)
    };
    match (sec.lookup("generators"), sec.lookup("elements")) {
        (Some(e), None) => {
            if sections.contains_key("representation") {
                let line = sections["representation"].line;
                return Err(Error::parse(
                    line,
                    "[representation] is only used with 'elements'",
                ));
            }
            let names = names_of(e)?;
            let mut allowed = vec!["generators"];
            allowed.extend(names.iter().map(String::as_str));
            sec.only_keys(&allowed)?;
            let mut matrices = Vec::new();
            for n in &names {
                let m = sec.require("group", n)?;
                let mat = parse_matrix(&m.value, field, m.line)?;
                check_dim(&mat, m.line)?;
                matrices.push(mat);
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let rep = close_generators(&matrices, &refs, GROUP_CAP).map_err(wrap(sec.line))?;
            Ok((GroupInput::Generators { names, matrices }, rep))
        }
        (None, Some(e)) => {
            let names = names_of(e)?;
            let mut allowed = vec!["elements"];
            allowed.extend(names.iter().map(String::as_str));
            sec.only_keys(&allowed)?;
            let mut table = Vec::new();
            for n in &names {
                let row = sec.require("group", n)?;
                let entries =
                    row.value
                        .split_whitespace()
                        .map(|x| {
                            names.iter().position(|y| y == x).ok_or_else(|| {
                                Error::parse(row.line, format!("unknown element '{x}'"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                if entries.len() != names.len() {
                    return Err(Error::parse(row.line, "table row has the wrong length"));
                }
                table.push(entries);
            }
            let group =
                FiniteGroup::from_table(table.clone(), names.clone()).map_err(wrap(sec.line))?;
            let rsec = sections.get("representation").ok_or_else(|| {
                Error::parse(sec.line, "a table group needs a [representation] section")
            })?;
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            rsec.only_keys(&refs)?;
            let mut matrices = Vec::new();
            for n in &names {
                let m = rsec.require("representation", n)?;
                let mat = parse_matrix(&m.value, field, m.line)?;
                check_dim(&mat, m.line)?;
                matrices.push(mat);
            }
            let rep = Representation::new(group, field, dim, matrices.clone())
                .map_err(wrap(rsec.line))?;
            Ok((
                GroupInput::Table {
                    names,
                    table,
                    matrices,
                },
                rep,
            ))
        }
        _ => Err(Error::parse(
            sec.line,
            "[group] needs exactly one of 'generators' or 'elements'",
        )),
    }
}

struct Ctx<'a> {
    rep: &'a Representation,
    basis: &'a [String],
}

impl Ctx<'_> {
    fn expr(&self) -> ExprContext<'_> {
        ExprContext {
            field: self.rep.field(),
            basis: self.basis,
            group: self.rep.group(),
        }
    }

    fn basis_index(&self, name: &str, line: usize) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::parse(line, format!("unknown basis vector '{name}'")))
    }

    fn element(&self, name: &str, line: usize) -> Result<usize> {
        self.rep
            .group()
            .parse_element(name)
            .ok_or_else(|| Error::parse(line, format!("unknown group element '{name}'")))
    }

    /// Entries keyed `element basis`, each with a `kG` value.
    fn lambda_entries(&self, sec: &Section) -> Result<Vec<(usize, usize, GroupAlgebraElem)>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for e in &sec.entries {
            let parts: Vec<&str> = e.key.split(' ').collect();
            let [g, v] = parts[..] else {
                return Err(Error::parse(
                    e.line,
                    format!("expected 'element basis', got '{}'", e.key),
                ));
            };
            let (g, i) = (self.element(g, e.line)?, self.basis_index(v, e.line)?);
            if !seen.insert((g, i)) {
                return Err(Error::parse(e.line, "entry repeats an earlier one"));
            }
            out.push((g, i, parse_group_algebra(&e.value, self.expr(), e.line)?));
        }
        Ok(out)
    }

    fn lambda_table(&self, sec: &Section) -> Result<LambdaParam> {
        let mut lambda = LambdaParam::zero(self.rep.group().order(), self.rep.dim());
        for (g, i, x) in self.lambda_entries(sec)? {
            lambda.set(g, i, x);
        }
        Ok(lambda)
    }

    /// Entries keyed `basis basis`.
    fn pairs<'s>(&self, sec: &'s Section) -> Result<Vec<(usize, usize, usize, &'s str)>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for e in &sec.entries {
            let parts: Vec<&str> = e.key.split(' ').collect();
            let [a, b] = parts[..] else {
                return Err(Error::parse(
                    e.line,
                    format!("expected 'basis basis', got '{}'", e.key),
                ));
            };
            let (i, j) = (self.basis_index(a, e.line)?, self.basis_index(b, e.line)?);
            if i == j {
                return Err(Error::parse(
                    e.line,
                    "kappa is alternating; equal arguments are not allowed",
                ));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::parse(e.line, "entry repeats an earlier one"));
            }
            out.push((e.line, i, j, e.value.as_str()));
        }
        Ok(out)
    }

    fn kappa_table(&self, sec: &Section) -> Result<KappaParam> {
        let mut kappa = KappaParam::zero(self.rep.dim());
        for (line, i, j, value) in self.pairs(sec)? {
            let x = parse_group_algebra(value, self.expr(), line)?;
            kappa.set(i, j, x).map_err(wrap(line))?;
        }
        Ok(kappa)
    }

    fn general_kappa(&self, sec: &Section) -> Result<GeneralKappa> {
        let mut kappa = GeneralKappa::zero(self.rep.dim());
        for (line, i, j, value) in self.pairs(sec)? {
            let mut x = parse_general_value(value, self.expr(), line)?;
            if i > j {
                x = x.neg();
            }
            kappa.set(i.min(j), i.max(j), x).map_err(wrap(line))?;
        }
        kappa.check_against(self.rep).map_err(wrap(sec.line))?;
        Ok(kappa)
    }

    fn images(&self, sec: &Section, name: &str) -> Result<(Vec<SkewElem>, Vec<SkewElem>)> {
        let grp = self.rep.group();
        let gens: Vec<&str> = grp.generators().iter().map(|&g| grp.name(g)).collect();
        let mut allowed = gens.clone();
        allowed.extend(self.basis.iter().map(String::as_str));
        sec.only_keys(&allowed)?;
        let image = |key: &str| -> Result<SkewElem> {
            let e = sec.require(name, key)?;
            parse_skew(&e.value, self.expr(), e.line)
        };
        let groups = gens.iter().map(|g| image(g)).collect::<Result<Vec<_>>>()?;
        let vectors = self
            .basis
            .iter()
            .map(|b| image(b))
            .collect::<Result<Vec<_>>>()?;
        Ok((groups, vectors))
    }
}

fn parse_lambda(
    sections: &HashMap<String, Section>,
    ctx: &Ctx<'_>,
) -> Result<(LambdaInput, LambdaParam)> {
    let present: Vec<&str> = ["lambda", "lambda-seed", "coxeter"]
        .into_iter()
        .filter(|s| sections.contains_key(*s))
        .collect();
    let rep = ctx.rep;
    let grp = rep.group();
    match present[..] {
        [] => Ok((LambdaInput::Zero, LambdaParam::zero(grp.order(), rep.dim()))),
        ["lambda"] => {
            let sec = &sections["lambda"];
            Ok((LambdaInput::Table, ctx.lambda_table(sec)?))
        }
        ["lambda-seed"] => {
            let sec = &sections["lambda-seed"];
            let mut seed: BTreeMap<usize, Vec<GroupAlgebraElem>> = BTreeMap::new();
            for (g, i, x) in ctx.lambda_entries(sec)? {
                seed.entry(g)
                    .or_insert_with(|| vec![GroupAlgebraElem::zero(); rep.dim()])[i] = x;
            }
            let lambda = extend_lambda_by_recursion(&seed, rep).map_err(wrap(sec.line))?;
            Ok((LambdaInput::Seed(seed), lambda))
        }
        ["coxeter"] => {
            let sec = &sections["coxeter"];
            let (mut reflections, mut roots, mut c) = (Vec::new(), Vec::new(), Vec::new());
            for e in &sec.entries {
                reflections.push(ctx.element(&e.key, e.line)?);
                let (root, param) = e.value.split_once(';').ok_or_else(|| {
                    Error::parse(e.line, "expected 'root coordinates ; parameter'")
                })?;
                let root = root
                    .split_whitespace()
                    .map(|x| rep.field().parse_scalar(x).map_err(wrap(e.line)))
                    .collect::<Result<Vec<_>>>()?;
                if root.len() != rep.dim() {
                    return Err(Error::parse(
                        e.line,
                        format!("root needs {} coordinates", rep.dim()),
                    ));
                }
                roots.push(root);
                c.push(rep.field().parse_scalar(param).map_err(wrap(e.line))?);
            }
            let lambda =
                build_lambda_coxeter(rep, &reflections, &roots, &c).map_err(wrap(sec.line))?;
            Ok((
                LambdaInput::Coxeter {
                    reflections,
                    roots,
                    c,
                },
                lambda,
            ))
        }
        _ => {
            let line = present.iter().map(|s| sections[*s].line).max().unwrap_or(0);
            Err(Error::parse(
                line,
                "give lambda through only one of [lambda], [lambda-seed], [coxeter]",
            ))
        }
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance> {
        let sections = split_sections(text)?;

        let (mut name, mut description) = (None, None);
        if let Some(sec) = sections.get("meta") {
            sec.only_keys(&["name", "description"])?;
            name = sec.lookup("name").map(|e| e.value.clone());
            description = sec.lookup("description").map(|e| e.value.clone());
        }
        let field = parse_field(
            sections
                .get("field")
                .ok_or_else(|| Error::parse(0, "missing [field] section"))?,
        )?;
        let space = sections
            .get("space")
            .ok_or_else(|| Error::parse(0, "missing [space] section"))?;
        space.only_keys(&["basis"])?;
        let basis_entry = space.require("space", "basis")?;
        let basis: Vec<String> = basis_entry
            .value
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if basis.is_empty() {
            return Err(Error::parse(basis_entry.line, "empty basis"));
        }
        for (k, b) in basis.iter().enumerate() {
            if !is_identifier(b) || basis[..k].contains(b) {
                return Err(Error::parse(
                    basis_entry.line,
                    format!("bad or repeated basis name '{b}'"),
                ));
            }
        }

        let (group_input, rep) = parse_group(&sections, field, basis.len())?;
        if let Some(b) = basis
            .iter()
            .find(|b| rep.group().parse_element(b).is_some())
        {
            return Err(Error::parse(
                basis_entry.line,
                format!("basis name '{b}' collides with a group element"),
            ));
        }
        let ctx = Ctx {
            rep: &rep,
            basis: &basis,
        };
        let (lambda_input, lambda) = parse_lambda(&sections, &ctx)?;

        let kappa = match (sections.get("kappa"), sections.get("general-kappa")) {
            (Some(_), Some(sec)) => {
                return Err(Error::parse(
                    sec.line,
                    "give only one of [kappa] and [general-kappa]",
                ));
            }
            (Some(sec), None) => KappaInput::Plain(ctx.kappa_table(sec)?),
            (None, Some(sec)) => KappaInput::General(ctx.general_kappa(sec)?),
            (None, None) => KappaInput::Plain(KappaParam::zero(rep.dim())),
        };

        let map = match sections.get("map") {
            Some(sec) => {
                let source_lambda = match sections.get("source-lambda") {
                    Some(s) => ctx.lambda_table(s)?,
                    None => LambdaParam::zero(rep.group().order(), rep.dim()),
                };
                let source_kappa = match sections.get("source-kappa") {
                    Some(s) => ctx.kappa_table(s)?,
                    None => KappaParam::zero(rep.dim()),
                };
                let (generator_images, vector_images) = ctx.images(sec, "map")?;
                let inverse = sections
                    .get("inverse-map")
                    .map(|s| ctx.images(s, "inverse-map"))
                    .transpose()?;
                Some(MapInput {
                    source_lambda,
                    source_kappa,
                    generator_images,
                    vector_images,
                    inverse,
                })
            }
            None => {
                if let Some(s) = ["source-lambda", "source-kappa", "inverse-map"]
                    .iter()
                    .find_map(|s| sections.get(*s))
                {
                    return Err(Error::parse(s.line, "map sections need a [map] section"));
                }
                None
            }
        };

        Ok(Instance {
            name,
            description,
            basis,
            group_input,
            rep,
            lambda_input,
            lambda,
            kappa,
            map,
        })
    }

    pub fn render(&self) -> String {
        let grp = self.rep.group();
        let basis = &self.basis;
        let mut sections: Vec<(String, Vec<String>)> = Vec::new();

        let mut meta = Vec::new();
        if let Some(n) = &self.name {
            meta.push(format!("name = {n}"));
        }
        if let Some(d) = &self.description {
            meta.push(format!("description = {d}"));
        }
        if !meta.is_empty() {
            sections.push(("meta".into(), meta));
        }
        let characteristic = self.rep.field().characteristic();
        sections.push((
            "field".into(),
            vec![format!("characteristic = {characteristic}")],
        ));
        sections.push(("space".into(), vec![format!("basis = {}", basis.join(" "))]));
        match &self.group_input {
            GroupInput::Generators { names, matrices } => {
                let mut lines = vec![format!("generators = {}", names.join(" "))];
                lines.extend(
                    names
                        .iter()
                        .zip(matrices)
                        .map(|(n, m)| format!("{n} = {m}")),
                );
                sections.push(("group".into(), lines));
            }
            GroupInput::Table {
                names,
                table,
                matrices,
            } => {
                let mut lines = vec![format!("elements = {}", names.join(" "))];
                for (n, row) in names.iter().zip(table) {
                    let row: Vec<&str> = row.iter().map(|&x| names[x].as_str()).collect();
                    lines.push(format!("{n} = {}", row.join(" ")));
                }
                sections.push(("group".into(), lines));
                let reps = names
                    .iter()
                    .zip(matrices)
                    .map(|(n, m)| format!("{n} = {m}"))
                    .collect();
                sections.push(("representation".into(), reps));
            }
        }

        let lambda_lines = |lambda: &LambdaParam| -> Vec<String> {
            let mut out = Vec::new();
            for g in 0..grp.order() {
                for (i, b) in basis.iter().enumerate() {
                    let x = lambda.get(g, i);
                    if !x.is_zero() {
                        out.push(format!(
                            "{} {b} = {}",
                            grp.name(g),
                            render_group_algebra(x, basis, grp)
                        ));
                    }
                }
            }
            out
        };
        let kappa_lines = |kappa: &KappaParam| -> Vec<String> {
            kappa
                .entries()
                .map(|(i, j, x)| {
                    format!(
                        "{} {} = {}",
                        basis[i],
                        basis[j],
                        render_group_algebra(x, basis, grp)
                    )
                })
                .collect()
        };
        match &self.lambda_input {
            LambdaInput::Zero => {}
            LambdaInput::Table => {
                if !self.lambda.is_zero() {
                    sections.push(("lambda".into(), lambda_lines(&self.lambda)));
                }
            }
            LambdaInput::Seed(seed) => {
                let mut lines = Vec::new();
                for (&g, values) in seed {
                    for (i, x) in values.iter().enumerate() {
                        if !x.is_zero() {
                            lines.push(format!(
                                "{} {} = {}",
                                grp.name(g),
                                basis[i],
                                render_group_algebra(x, basis, grp)
                            ));
                        }
                    }
                }
                sections.push(("lambda-seed".into(), lines));
            }
            LambdaInput::Coxeter {
                reflections,
                roots,
                c,
            } => {
                let lines = reflections
                    .iter()
                    .zip(roots)
                    .zip(c)
                    .map(|((&s, root), c)| {
                        let root: Vec<String> = root.iter().map(Scalar::to_string).collect();
                        format!("{} = {} ; {c}", grp.name(s), root.join(" "))
                    })
                    .collect();
                sections.push(("coxeter".into(), lines));
            }
        }
        match &self.kappa {
            KappaInput::Plain(k) => {
                if !k.is_zero() {
                    sections.push(("kappa".into(), kappa_lines(k)));
                }
            }
            KappaInput::General(k) => {
                let lines = k
                    .entries()
                    .map(|(i, j, x)| {
                        format!(
                            "{} {} = {}",
                            basis[i],
                            basis[j],
                            x.to_skew().render(basis, grp)
                        )
                    })
                    .collect();
                sections.push(("general-kappa".into(), lines));
            }
        }
        if let Some(map) = &self.map {
            if !map.source_lambda.is_zero() {
                sections.push(("source-lambda".into(), lambda_lines(&map.source_lambda)));
            }
            if !map.source_kappa.is_zero() {
                sections.push(("source-kappa".into(), kappa_lines(&map.source_kappa)));
            }
            let image_lines = |groups: &[SkewElem], vectors: &[SkewElem]| -> Vec<String> {
                let gens = grp.generators().iter().map(|&g| grp.name(g));
                gens.zip(groups)
                    .chain(basis.iter().map(String::as_str).zip(vectors))
                    .map(|(k, x)| format!("{k} = {}", x.render(basis, grp)))
                    .collect()
            };
            sections.push((
                "map".into(),
                image_lines(&map.generator_images, &map.vector_images),
            ));
            if let Some((groups, vectors)) = &map.inverse {
                sections.push(("inverse-map".into(), image_lines(groups, vectors)));
            }
        }

        let mut out = String::new();
        for (k, (name, lines)) in sections.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{name}]");
            for l in lines {
                let _ = writeln!(out, "{l}");
            }
        }
        out
    }

    /// Hex SHA-256 of the canonical rendering.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.render().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn field(&self) -> Field {
        self.rep.field()
    }

    pub fn plain_kappa(&self) -> Option<&KappaParam> {
        match &self.kappa {
            KappaInput::Plain(k) => Some(k),
            KappaInput::General(_) => None,
        }
    }

    pub fn general_kappa(&self) -> GeneralKappa {
        match &self.kappa {
            KappaInput::Plain(k) => GeneralKappa::from_kappa(k),
            KappaInput::General(k) => k.clone(),
        }
    }

    pub fn reduction_system(&self, grading: Grading) -> Result<ReductionSystem> {
        ReductionSystem::new(&self.rep, &self.lambda, &self.general_kappa(), grading)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE_FORM: &str = "\
[field]
characteristic = 3

[space]
basis = x

[group]
elements = e a
e = e a
a = a e

[representation]
e = [[1]]
a = [[2]]

[lambda-seed]
a x = 1 + a
";

    #[test]
    fn table_groups_round_trip() {
        let inst = Instance::parse(TABLE_FORM).unwrap();
        assert_eq!(inst.rep.group().order(), 2);
        assert_eq!(inst.render(), TABLE_FORM);
        assert!(matches!(inst.lambda_input, LambdaInput::Seed(_)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_key = TABLE_FORM.replace("basis = x", "basis = x\ncolour = red");
        assert!(matches!(
            Instance::parse(&bad_key),
            Err(Error::Parse { line: 6, .. })
        ));
        let bad_row = TABLE_FORM.replace("a = a e", "a = a b");
        assert!(matches!(
            Instance::parse(&bad_row),
            Err(Error::Parse { line: 10, .. })
        ));
        let singular = TABLE_FORM.replace("a = [[2]]", "a = [[0]]");
        assert!(matches!(
            Instance::parse(&singular),
            Err(Error::Parse { .. })
        ));
        let no_field = TABLE_FORM.replace("[field]\ncharacteristic = 3\n", "");
        assert!(matches!(
            Instance::parse(&no_field),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn matrices_parse_in_display_form() {
        let f = Field::Rationals;
        let m = parse_matrix("[[1, -1/2], [0, 3]]", f, 1).unwrap();
        assert_eq!(m.to_string(), "[[1, -1/2], [0, 3]]");
        assert!(parse_matrix("[[1, 2], [3]]", f, 1).is_err());
        assert!(parse_matrix("[[1, 2],]", f, 1).is_err());
        assert!(parse_matrix("[1, 2]", f, 1).is_err());
    }
}
