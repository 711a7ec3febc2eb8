use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::params::{GeneralKappa, KappaParam, LambdaParam};
use crate::representation::Representation;
use crate::scalar::Scalar;
use crate::skew::{SkewElem, SkewMonomial};

/// A generator of the free algebra: a basis vector or a group element.
/// The derived order puts every `V` letter below every `G` letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    V(u16),
    G(u16),
}

pub type Word = Vec<Letter>;

/// A formal combination `Σ c t^k w` of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElem {
    terms: BTreeMap<(u32, Word), Scalar>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(0, w, c);
        x
    }

    pub fn add_term(&mut self, t: u32, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (t, w);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Word, &Scalar)> {
        self.terms.iter().map(|((t, w), c)| (*t, w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, basis: &[String], group_names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (t, w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            out.push_str(match (k, negative) {
                (0, true) => "- ",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mut factors = Vec::new();
            if !mag.is_one() || (w.is_empty() && t == 0) {
                factors.push(mag.to_string());
            }
            if t > 0 {
                factors.push(if t == 1 { "t".into() } else { format!("t^{t}") });
            }
            factors.extend(w.iter().map(|l| letter_name(*l, basis, group_names)));
            out.push_str(&factors.join(" "));
        }
        out
    }
}

pub fn letter_name(l: Letter, basis: &[String], group_names: &[String]) -> String {
    match l {
        Letter::V(i) => basis[i as usize].clone(),
        Letter::G(g) => group_names[g as usize].clone(),
    }
}

/// Word of a PBW monomial: sorted `V` letters then its group letter.
pub fn monomial_word(m: &SkewMonomial) -> Word {
    let mut w = Vec::with_capacity(m.degree() as usize + 1);
    for (i, &e) in m.exps.iter().enumerate() {
        for _ in 0..e {
            w.push(Letter::V(i as u16));
        }
    }
    w.push(Letter::G(m.group as u16));
    w
}

/// Exponents of `t` attached to the two deformed relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// `gv = ^g v g + λ(g,v)`, `vw = wv + κ(v,w)`.
    Untwisted,
    /// `gv = ^g v g + λ(g,v) t`, `vw = wv + κ(v,w) t²`.
    Graded,
    /// The graded system after `t² ↦ t`; needs `λ ≡ 0`.
    Collapsed,
}

impl Grading {
    pub fn degrees(self) -> (u32, u32) {
        match self {
            Grading::Untwisted => (0, 0),
            Grading::Graded => (1, 2),
            Grading::Collapsed => (1, 1),
        }
    }
}

type Rhs = Vec<(u32, Word, Scalar)>;

/// Rewriting rules `gh → (gh)`, `g v_i → Σ_j ρ(g)_{ji} v_j g + λ(g,v_i) t^{d₁}`
/// and `v_j v_i → v_i v_j + κ(v_j,v_i) t^{d₂}` for `j > i`.
///
/// Every rule lowers the word in the order (polynomial degree, inversions
/// among `V` letters, `V` letters standing right of a group letter), so
/// reduction terminates.
#[derive(Debug)]
pub struct ReductionSystem {
    rep: Representation,
    lambda: LambdaParam,
    kappa: GeneralKappa,
    grading: Grading,
    gv: Vec<Rhs>,
    vv: HashMap<(u16, u16), Rhs>,
    confluent: OnceLock<bool>,
}

impl ReductionSystem {
    pub fn new(
        rep: &Representation,
        lambda: &LambdaParam,
        kappa: &GeneralKappa,
        grading: Grading,
    ) -> Result<Self> {
        lambda.check_against(rep)?;
        kappa.check_against(rep)?;
        if grading == Grading::Collapsed && !lambda.is_zero() {
            return Err(Error::Precondition(
                "t^2 -> t collapse needs lambda identically zero".into(),
            ));
        }
        let (d1, d2) = grading.degrees();
        let n = rep.group().order();
        let m = rep.dim();
        if n > u16::MAX as usize || m > u16::MAX as usize {
            return Err(Error::OutOfRange("group or dimension too large".into()));
        }
        let mut gv = Vec::with_capacity(n * m);
        for g in 0..n {
            for i in 0..m {
                let mut rhs = Rhs::new();
                for (j, c) in rep.act_basis(g, i).into_iter().enumerate() {
                    if !c.is_zero() {
                        rhs.push((0, vec![Letter::V(j as u16), Letter::G(g as u16)], c));
                    }
                }
                for (h, c) in lambda.get(g, i).terms() {
                    rhs.push((d1, vec![Letter::G(h as u16)], c.clone()));
                }
                gv.push(rhs);
            }
        }
        let one = rep.field().one();
        let mut vv = HashMap::new();
        for j in 0..m {
            for i in 0..j {
                let mut rhs: Rhs = vec![(
                    0,
                    vec![Letter::V(i as u16), Letter::V(j as u16)],
                    one.clone(),
                )];
                let val = kappa.get(j, i);
                for (h, c) in val.constant.terms() {
                    rhs.push((d2, vec![Letter::G(h as u16)], c.clone()));
                }
                for (k, x) in val.linear.iter().enumerate() {
                    for (h, c) in x.terms() {
                        rhs.push((
                            d2,
                            vec![Letter::V(k as u16), Letter::G(h as u16)],
                            c.clone(),
                        ));
                    }
                }
                vv.insert((j as u16, i as u16), rhs);
            }
        }
        Ok(ReductionSystem {
            rep: rep.clone(),
            lambda: lambda.clone(),
            kappa: kappa.clone(),
            grading,
            gv,
            vv,
            confluent: OnceLock::new(),
        })
    }

    pub fn from_plain(
        rep: &Representation,
        lambda: &LambdaParam,
        kappa: &KappaParam,
        grading: Grading,
    ) -> Result<Self> {
        Self::new(rep, lambda, &GeneralKappa::from_kappa(kappa), grading)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn lambda(&self) -> &LambdaParam {
        &self.lambda
    }

    pub fn kappa(&self) -> &GeneralKappa {
        &self.kappa
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Right-hand side of the rule for the pair `(a, b)`, if it is reducible.
    pub(crate) fn rule(&self, a: Letter, b: Letter) -> Option<RuleRhs<'_>> {
        match (a, b) {
            (Letter::G(g), Letter::G(h)) => {
                let gh = self.rep.group().mul(g as usize, h as usize);
                Some(RuleRhs::Group(gh as u16))
            }
            (Letter::G(g), Letter::V(i)) => Some(RuleRhs::Terms(
                &self.gv[g as usize * self.dim() + i as usize],
            )),
            (Letter::V(j), Letter::V(i)) if j > i => Some(RuleRhs::Terms(&self.vv[&(j, i)])),
            _ => None,
        }
    }

    /// Whether every ambiguity resolves (computed once).
    pub fn is_confluent(&self) -> bool {
        *self
            .confluent
            .get_or_init(|| super::ambiguity::resolve_ambiguities(self).is_confluent())
    }

    /// Normal form of a single element (fresh memo table).
    pub fn normal_form(&self, x: &FreeElem) -> SkewElem {
        Normalizer::new(self).normal_form(x)
    }

    pub fn multiply(&self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        Normalizer::new(self).multiply(a, b)
    }
}

pub(crate) enum RuleRhs<'a> {
    Group(u16),
    Terms(&'a Rhs),
}

/// Leftmost reduction to normal form with a memo table of word normal
/// forms. One per thread.
pub struct Normalizer<'a> {
    sys: &'a ReductionSystem,
    memo: HashMap<Word, SkewElem>,
    steps: u64,
}

impl<'a> Normalizer<'a> {
    pub fn new(sys: &'a ReductionSystem) -> Self {
        Normalizer {
            sys,
            memo: HashMap::new(),
            steps: 0,
        }
    }

    pub fn system(&self) -> &'a ReductionSystem {
        self.sys
    }

    /// Rule applications performed so far (memo hits excluded).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn irreducible_monomial(&self, w: &[Letter]) -> SkewMonomial {
        let mut exps = vec![0u32; self.sys.dim()];
        let mut group = self.sys.rep.group().identity();
        for l in w {
            match *l {
                Letter::V(i) => exps[i as usize] += 1,
                Letter::G(g) => group = g as usize,
            }
        }
        SkewMonomial::new(0, exps, group)
    }

    pub fn normal_form_word(&mut self, w: &[Letter]) -> SkewElem {
        if let Some(x) = self.memo.get(w) {
            return x.clone();
        }
        let pos = (0..w.len().saturating_sub(1)).find(|&i| self.sys.rule(w[i], w[i + 1]).is_some());
        let result = match pos {
            None => SkewElem::monomial(self.irreducible_monomial(w), self.sys.rep.field().one()),
            Some(i) => {
                self.steps += 1;
                let rhs = self.sys.rule(w[i], w[i + 1]).expect("reducible");
                let mut out = SkewElem::zero();
                match rhs {
                    RuleRhs::Group(gh) => {
                        let mut nw = Vec::with_capacity(w.len() - 1);
                        nw.extend_from_slice(&w[..i]);
                        nw.push(Letter::G(gh));
                        nw.extend_from_slice(&w[i + 2..]);
                        out = self.normal_form_word(&nw);
                    }
                    RuleRhs::Terms(terms) => {
                        for (t, r, c) in terms.iter() {
                            let mut nw = Vec::with_capacity(w.len() + r.len());
                            nw.extend_from_slice(&w[..i]);
                            nw.extend_from_slice(r);
                            nw.extend_from_slice(&w[i + 2..]);
                            let sub = self.normal_form_word(&nw);
                            out.add_scaled(&sub.shift_t(*t), c);
                        }
                    }
                }
                out
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        result
    }

    pub fn normal_form(&mut self, x: &FreeElem) -> SkewElem {
        let mut out = SkewElem::zero();
        for (t, w, c) in x.terms() {
            let nf = self.normal_form_word(w);
            out.add_scaled(&nf.shift_t(t), c);
        }
        out
    }

    /// `a · b` reduced to normal form.
    pub fn multiply(&mut self, a: &SkewElem, b: &SkewElem) -> SkewElem {
        let mut out = SkewElem::zero();
        for (ma, ca) in a.terms() {
            let wa = monomial_word(ma);
            for (mb, cb) in b.terms() {
                let mut w = wa.clone();
                w.extend(monomial_word(mb));
                let nf = self.normal_form_word(&w);
                out.add_scaled(&nf.shift_t(ma.t + mb.t), &(ca * cb));
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn product(&mut self, factors: &[&SkewElem]) -> SkewElem {
        let mut acc = SkewElem::one(self.sys.rep.field(), self.sys.dim(), self.sys.rep.group());
        for f in factors {
            acc = self.multiply(&acc, f);
        }
        acc
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::V(i) => write!(f, "v{}", i + 1),
            Letter::G(g) => write!(f, "g[{g}]"),
        }
    }
}
