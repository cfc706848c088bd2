//! Finitely presented groups: words, free reduction, abelianization and Tietze moves.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A generator index with exponent `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Letter {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    pub fn from_gens(gens: &[usize]) -> Word {
        Word(gens.iter().map(|&g| Letter::new(g, false)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.reduced().0;
        while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Exponent sum per generator.
    pub fn abelian(&self, gens: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); gens];
        for l in &self.0 {
            if l.inv {
                v[l.gen] -= 1;
            } else {
                v[l.gen] += 1;
            }
        }
        v
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.gen == g).count()
    }

    /// Replace every occurrence of generator `g` by `w` (and its inverse by `w⁻¹`).
    pub fn substitute(&self, g: usize, w: &Word) -> Word {
        let winv = w.inverse();
        let mut out = Vec::new();
        for &l in &self.0 {
            if l.gen == g {
                out.extend_from_slice(if l.inv { &winv.0 } else { &w.0 });
            } else {
                out.push(l);
            }
        }
        Word(out).reduced()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| if l.inv { format!("{}^-1", names[l.gen]) } else { names[l.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Presentation {
        Presentation { generators, relators }
    }

    pub fn free(n: usize) -> Presentation {
        Presentation::new((1..=n).map(|i| format!("x{i}")).collect(), Vec::new())
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators.iter().map(|r| r.abelian(self.generators.len())).collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let diag = smith_diagonal(self.relator_matrix(), self.generators.len());
        Abelianization {
            free_rank: self.generators.len() - diag.len(),
            torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// Whether two words have the same image in the abelianization.
    pub fn abelian_equal(&self, a: &Word, b: &Word) -> bool {
        let n = self.generators.len();
        let diff: Vec<BigInt> = a.abelian(n).iter().zip(b.abelian(n)).map(|(x, y)| x - y).collect();
        lattice_contains(&self.relator_matrix(), n, &diff)
    }

    /// Relators as multisets of freely reduced words, for comparisons.
    pub fn relator_multiset(&self) -> BTreeMap<Word, usize> {
        let mut m = BTreeMap::new();
        for r in &self.relators {
            *m.entry(r.reduced()).or_insert(0) += 1;
        }
        m
    }

    /// Tietze simplification: drop trivial relators and eliminate generators that occur
    /// exactly once in some relator.
    pub fn simplify(&self) -> Presentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Word> = self.relators.iter().map(|r| r.cyclically_reduced()).collect();
        loop {
            rels.retain(|r| !r.is_empty());
            rels.sort();
            rels.dedup();
            let mut found = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                for (pos, l) in r.0.iter().enumerate() {
                    if r.occurrences(l.gen) == 1 {
                        found = Some((ri, pos));
                        break 'search;
                    }
                }
            }
            let Some((ri, pos)) = found else { break };
            let r = rels.remove(ri);
            let l = r.0[pos];
            // r = u l v = 1, so l = u⁻¹ v⁻¹
            let u = Word(r.0[..pos].to_vec());
            let v = Word(r.0[pos + 1..].to_vec());
            let mut value = u.inverse().concat(&v.inverse());
            if l.inv {
                value = value.inverse();
            }
            rels = rels.iter().map(|w| w.substitute(l.gen, &value).cyclically_reduced()).collect();
            gens[l.gen] = None;
        }
        let keep: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].is_some()).collect();
        let renum: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        Presentation {
            generators: keep.iter().map(|&i| gens[i].clone().unwrap()).collect(),
            relators: rels
                .iter()
                .map(|w| Word(w.0.iter().map(|l| Letter::new(renum[&l.gen], l.inv)).collect()))
                .collect(),
        }
    }

    /// `gens: a b ; rels: w1; w2`
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        format!("gens: {} ; rels: {}", self.generators.join(" "), rels.join("; "))
    }

    /// GAP-style construction of the same group.
    pub fn to_gap(&self) -> String {
        let ident = |i: usize| format!("f.{}", i + 1);
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                if r.is_empty() {
                    "One(f)".to_string()
                } else {
                    r.0.iter()
                        .map(|l| if l.inv { format!("{}^-1", ident(l.gen)) } else { ident(l.gen) })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{g}\"")).collect();
        format!("f := FreeGroup({});;\ng := f / [{}];;\n", if names.is_empty() { "0".into() } else { names.join(", ") }, rels.join(", "))
    }

    pub fn parse_text(s: &str) -> Option<Presentation> {
        let s = s.trim();
        let rest = s.strip_prefix("gens:")?;
        let (gens, rels) = rest.split_once("; rels:")?;
        let generators: Vec<String> = gens.split_whitespace().map(String::from).collect();
        let index: BTreeMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        let mut relators = Vec::new();
        for r in rels.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let mut w = Vec::new();
            for tok in r.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                let (name, inv) = match tok.strip_suffix("^-1") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                w.push(Letter::new(*index.get(name)?, inv));
            }
            relators.push(Word(w));
        }
        Some(Presentation { generators, relators })
    }
}

/// Nonzero diagonal of the Smith normal form, normalized positive and with each entry
/// dividing the next.
pub fn smith_diagonal(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let mut a = rows;
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..m {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                let bad = (t + 1..m).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && (a[best.0][best.1].is_zero() || a[i][t].abs() < a[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Integer row echelon form (Hermite style) of a set of vectors.
pub fn hermite_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = a[i][c].div_floor(&a[p][c]);
                for j in 0..cols {
                    let d = &q * &a[p][j];
                    a[i][j] -= d;
                }
            }
        }
        if let Some(p) = (0..a.len()).find(|&i| !a[i][c].is_zero()) {
            let mut row = a.remove(p);
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(row);
        }
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}

/// Whether `v` lies in the integer span of `rows`.
pub fn lattice_contains(rows: &[Vec<BigInt>], cols: usize, v: &[BigInt]) -> bool {
    let basis = hermite_rows(rows, cols);
    let mut v = v.to_vec();
    for row in &basis {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if v[..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = v[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for j in 0..cols {
            let d = &q * &row[j];
            v[j] -= d;
        }
    }
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, bool)]) -> Word {
        Word(letters.iter().map(|&(g, i)| Letter::new(g, i)).collect())
    }

    #[test]
    fn torus_abelianizes_freely() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![w(&[(0, false), (1, false), (0, true), (1, true)])]);
        let ab = p.abelianization();
        assert_eq!((ab.free_rank, ab.torsion.len()), (2, 0));
    }

    #[test]
    fn free_and_cyclic() {
        assert_eq!(Presentation::free(3).abelianization().free_rank, 3);
        let p = Presentation::new(vec!["x".into()], vec![w(&[(0, false), (0, false)])]);
        assert_eq!(p.abelianization().torsion, vec![BigInt::from(2)]);
        assert_eq!(p.abelianization().free_rank, 0);
    }

    #[test]
    fn smith_of_known_matrix() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(-4), BigInt::from(-16)],
        ];
        assert_eq!(smith_diagonal(m, 3), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn reduction() {
        let x = w(&[(0, false), (1, false), (1, true), (2, false)]);
        assert_eq!(x.reduced(), w(&[(0, false), (2, false)]));
        let y = w(&[(0, true), (1, false), (0, false)]);
        assert_eq!(y.cyclically_reduced(), w(&[(1, false)]));
    }

    #[test]
    fn tietze_eliminates_single_occurrence() {
        let p = Presentation::new(vec!["a".into(), "c".into()], vec![w(&[(0, false), (1, false)])]);
        let s = p.simplify();
        assert_eq!((s.generators.len(), s.relators.len()), (1, 0));
    }

    #[test]
    fn lattice_membership() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(3)]];
        assert!(lattice_contains(&rows, 2, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!lattice_contains(&rows, 2, &[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn text_roundtrip() {
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![w(&[(0, false), (1, true)]), Word::empty()]);
        assert_eq!(Presentation::parse_text(&p.to_text()), Some(p));
    }
}
