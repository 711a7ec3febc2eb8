//! Finite groups given by multiplication tables.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite group on the indices `0..order`.
///
/// Besides the table we keep a generating set together with a breadth-first
/// spanning tree: every element is reached from the identity by right
/// multiplication with generators, and [`FiniteGroup::word`] returns that
/// fixed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    names: Vec<String>,
    generators: Vec<usize>,
    /// `(parent, generator position)` with `parent * generators[pos] = x`.
    tree: Vec<Option<(usize, usize)>>,
    bfs_order: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table `table[a][b] = a*b`. Associativity is
    /// checked on all triples.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<FiniteGroup> {
        Self::build(table, names, true)
    }

    /// Tables produced by closing matrices under multiplication are
    /// associative by construction, so the cubic check is skipped.
    pub(crate) fn from_table_trusted(
        table: Vec<Vec<usize>>,
        names: Vec<String>,
    ) -> Result<FiniteGroup> {
        Self::build(table, names, false)
    }

    fn build(table: Vec<Vec<usize>>, names: Vec<String>, check_assoc: bool) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::NotAGroup("one name per element is required".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::NotAGroup("table is not n x n over 0..n".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", names[a])))?;
        }
        for a in (0..n).filter(|_| check_assoc) {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut group = FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverses,
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            names,
            generators: Vec::new(),
            tree: Vec::new(),
            bfs_order: Vec::new(),
        };
        group.compute_classes();
        let gens = group.greedy_generators();
        group.set_generators(gens)?;
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        for a in 0..n {
            if self.class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|x| self.mul(self.mul(x, a), self.inverses[x]))
                .collect();
            class.sort_unstable();
            class.dedup();
            let id = self.classes.len();
            for &c in &class {
                self.class_of[c] = id;
            }
            self.classes.push(class);
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        for a in 0..self.order {
            if reached[a] {
                continue;
            }
            gens.push(a);
            reached = self.closure_of(&gens);
        }
        gens
    }

    fn closure_of(&self, gens: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        reached
    }

    /// Replaces the generating set; fails if it does not generate.
    pub fn set_generators(&mut self, gens: Vec<usize>) -> Result<()> {
        if gens.iter().any(|&g| g >= self.order) {
            return Err(Error::NotAGroup("generator index out of range".into()));
        }
        let mut tree = vec![None; self.order];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut order = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (pos, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, pos));
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != self.order {
            return Err(Error::NotAGroup(
                "generators do not generate the group".into(),
            ));
        }
        self.generators = gens;
        self.tree = tree;
        self.bfs_order = order;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Elements in breadth-first order from the identity.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    /// The spanning-tree predecessor: `x = parent * generators[pos]`.
    pub fn tree_parent(&self, x: usize) -> Option<(usize, usize)> {
        self.tree[x]
    }

    /// Fixed word in the generators (as positions into
    /// [`FiniteGroup::generators`]) whose product is `x`.
    pub fn word(&self, x: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((parent, pos)) = self.tree[cur] {
            word.push(pos);
            cur = parent;
        }
        word.reverse();
        word
    }

    /// Looks up an element by name, or evaluates a product of names and
    /// powers such as `s.t^-1` or `g^3`.
    pub fn parse_element(&self, text: &str) -> Option<usize> {
        let text = text.trim();
        if let Some(i) = self.names.iter().position(|n| n == text) {
            return Some(i);
        }
        let mut acc = self.identity;
        for factor in text.split('.') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().ok()?),
                None => (factor, 1),
            };
            let b = self.names.iter().position(|n| n == base)?;
            acc = self.mul(acc, self.pow(b, exp));
        }
        Some(acc)
    }

    /// The cyclic group of order `n` with elements named `e, g, g^2, ...`.
    pub fn cyclic(n: usize, gen_name: &str) -> FiniteGroup {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let names = (0..n).map(|k| power_name(gen_name, k)).collect();
        let mut g = FiniteGroup::from_table(table, names).expect("cyclic table");
        if n > 1 {
            g.set_generators(vec![1]).expect("1 generates Z/n");
        }
        g
    }
}

pub(crate) fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Name for a word in named generators, compressing runs into powers.
pub(crate) fn word_name(word: &[&str]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        parts.push(power_name(word[i], j - i));
        i = j;
    }
    parts.join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        // permutations of {0,1,2} composed right to left
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        let names = ["e", "a", "b", "c", "d", "f"].map(String::from).to_vec();
        FiniteGroup::from_table(table, names).unwrap()
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(
            g.conjugacy_classes()[g.class_of(g.identity())],
            vec![g.identity()]
        );
    }

    #[test]
    fn words_multiply_back() {
        let g = s3();
        for x in 0..g.order() {
            let w = g.word(x);
            let prod = w
                .iter()
                .fold(g.identity(), |acc, &pos| g.mul(acc, g.generators()[pos]));
            assert_eq!(prod, x);
        }
    }

    #[test]
    fn rejects_non_groups() {
        let names = vec!["e".to_string(), "a".to_string()];
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], names.clone()).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 2]], names).is_err());
    }

    #[test]
    fn cyclic_names_and_parsing() {
        let g = FiniteGroup::cyclic(5, "g");
        assert_eq!(g.name(3), "g^3");
        assert_eq!(g.parse_element("g^-1"), Some(4));
        assert_eq!(g.parse_element("g.g^2"), Some(3));
        assert_eq!(g.parse_element("h"), None);
        assert_eq!(g.element_order(2), 5);
        assert_eq!(word_name(&["s", "s", "t"]), "s^2.t");
    }
}
