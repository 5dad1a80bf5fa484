//! Catalog of named example groups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FreeWord, GroupPresentation};
use crate::error::{Error, Result};

/// A simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Normalizes edges to `u < v` and rejects loops and stray vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("graph must have at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Invalid(format!("edge {u}-{v} has a vertex outside 1..={n}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i, i + 1)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid("cycle needs at least 3 vertices".into()));
        }
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))))
    }

    /// Star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.n {
            return false;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}", edges.join(","))
    }
}

impl FromStr for Graph {
    type Err = Error;

    /// Accepts `path:n`, `cycle:n`, `complete:n`, `star:k`, or an explicit
    /// adjacency list `n;u-v,u-v,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("malformed graph `{s}`"));
        if let Some((kind, n)) = s.split_once(':') {
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            return match kind.trim() {
                "path" => Graph::path(n),
                "cycle" => Graph::cycle(n),
                "complete" => Graph::complete(n),
                "star" => Graph::star(n),
                _ => Err(bad()),
            };
        }
        let (n, edges) = s.split_once(';').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let mut list = Vec::new();
        for e in edges.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (u, v) = e.split_once('-').ok_or_else(bad)?;
            list.push((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?));
        }
        Graph::new(n, list)
    }
}

/// The named example groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    Free(usize),
    Trefoil,
    TorusKnot(i64, i64),
    DihedralInf,
    /// `⟨x,y,z | [x,y]z⁻¹, [x,z], [y,z]⟩`.
    Heisenberg,
    /// The same group as the free 2-step nilpotent group,
    /// `⟨x,y | [x,[x,y]], [y,[x,y]]⟩`, whose relators are commutators.
    HeisenbergCommutator,
    BaumslagSolitar(i64),
    Raag(Graph),
    KleinBottle,
    CommutatorPower(i64),
    PureBraid(usize),
}

impl Builtin {
    /// Groups known to be 1-formal. Only used to pick which cross-checks apply.
    pub fn is_one_formal(&self) -> bool {
        matches!(self, Builtin::Free(_) | Builtin::Raag(_) | Builtin::PureBraid(_))
    }

    pub fn presentation(&self) -> Result<GroupPresentation> {
        let g = FreeWord::generator;
        let comm = |a: &FreeWord, b: &FreeWord| FreeWord::commutator(a, b);
        let label = self.to_string();
        match self {
            Builtin::Free(n) => {
                if *n == 0 {
                    return Err(Error::Invalid("free(n) needs n >= 1".into()));
                }
                GroupPresentation::with_generators(*n, vec![], label)
            }
            Builtin::Trefoil => {
                let lhs = g(1).mul(&g(2)).mul(&g(1));
                let rhs = g(2).mul(&g(1)).mul(&g(2));
                GroupPresentation::with_generators(2, vec![lhs.mul(&rhs.inverse())], label)
            }
            Builtin::TorusKnot(p, q) => {
                if *p < 1 || *q < 1 {
                    return Err(Error::Invalid("torus_knot(p,q) needs p,q >= 1".into()));
                }
                let r = g(1).pow(*p).mul(&g(2).pow(-*q));
                GroupPresentation::new(vec!["a".into(), "b".into()], vec![r], label)
            }
            Builtin::DihedralInf => GroupPresentation::with_generators(2, vec![g(1).pow(2), g(2).pow(2)], label),
            Builtin::Heisenberg => {
                let (x, y, z) = (g(1), g(2), g(3));
                let rels = vec![comm(&x, &y).mul(&z.inverse()), comm(&x, &z), comm(&y, &z)];
                GroupPresentation::new(vec!["x".into(), "y".into(), "z".into()], rels, label)
            }
            Builtin::HeisenbergCommutator => {
                let (x, y) = (g(1), g(2));
                let c = comm(&x, &y);
                let rels = vec![comm(&x, &c), comm(&y, &c)];
                GroupPresentation::new(vec!["x".into(), "y".into()], rels, label)
            }
            Builtin::BaumslagSolitar(n) => {
                let (t, a) = (g(1), g(2));
                let r = a.conjugate(&t).mul(&a.pow(-*n));
                GroupPresentation::new(vec!["t".into(), "a".into()], vec![r], label)
            }
            Builtin::Raag(graph) => {
                let rels = graph.edges.iter().map(|&(u, v)| comm(&g(u), &g(v))).collect();
                GroupPresentation::with_generators(graph.n, rels, label)
            }
            Builtin::KleinBottle => {
                let (t, a) = (g(1), g(2));
                GroupPresentation::new(vec!["t".into(), "a".into()], vec![a.conjugate(&t).mul(&a)], label)
            }
            Builtin::CommutatorPower(n) => {
                if *n < 1 {
                    return Err(Error::Invalid("commutator_power(n) needs n >= 1".into()));
                }
                GroupPresentation::with_generators(2, vec![comm(&g(1), &g(2)).pow(*n)], label)
            }
            Builtin::PureBraid(n) => pure_braid(*n, label),
        }
    }
}

/// Artin's presentation of `P_n`: generators `A_ij` (i<j, ordered
/// lexicographically) and, for every pair `(r,s)`, `(i,j)` with `s < j`,
/// the relator `A_rs⁻¹ A_ij A_rs · w⁻¹`.
fn pure_braid(n: usize, label: String) -> Result<GroupPresentation> {
    if !(2..=4).contains(&n) {
        return Err(Error::SizeGuard(format!("pure_braid({n}): only 2 <= n <= 4 is supported")));
    }
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs.push((i, j));
        }
    }
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap() + 1;
    let a = |i: usize, j: usize| FreeWord::generator(idx(i, j));
    let inv = |w: FreeWord| w.inverse();

    let mut rels = Vec::new();
    for &(r, s) in &pairs {
        for &(i, j) in &pairs {
            if s >= j {
                continue;
            }
            let lhs = a(i, j).conjugate(&a(r, s).inverse());
            let rhs = if s < i || (i < r && s < j) {
                a(i, j)
            } else if s == i {
                a(i, j).conjugate(&a(r, j))
            } else if i == r {
                a(i, j).conjugate(&a(r, j).mul(&a(s, j)))
            } else {
                // r < i < s < j
                let c = a(r, j).mul(&a(s, j)).mul(&inv(a(r, j))).mul(&inv(a(s, j)));
                a(i, j).conjugate(&c)
            };
            rels.push(lhs.mul(&rhs.inverse()));
        }
    }
    let names = pairs.iter().map(|(i, j)| format!("A{i}{j}")).collect();
    GroupPresentation::new(names, rels, label)
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Free(n) => write!(f, "free({n})"),
            Builtin::Trefoil => write!(f, "trefoil"),
            Builtin::TorusKnot(p, q) => write!(f, "torus_knot({p},{q})"),
            Builtin::DihedralInf => write!(f, "dihedral_inf"),
            Builtin::Heisenberg => write!(f, "heisenberg"),
            Builtin::HeisenbergCommutator => write!(f, "heisenberg_commutator"),
            Builtin::BaumslagSolitar(n) => write!(f, "baumslag_solitar({n})"),
            Builtin::Raag(g) => write!(f, "raag({g})"),
            Builtin::KleinBottle => write!(f, "klein_bottle"),
            Builtin::CommutatorPower(n) => write!(f, "commutator_power({n})"),
            Builtin::PureBraid(n) => write!(f, "pure_braid({n})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Parses `name` or `name(args)`, e.g. `free(3)`, `raag(path:3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(k) => {
                if !s.ends_with(')') {
                    return Err(Error::Invalid(format!("malformed builtin `{s}`")));
                }
                (&s[..k], Some(&s[k + 1..s.len() - 1]))
            }
            None => (s, None),
        };
        if name == "raag" {
            let graph = args.ok_or_else(|| Error::Invalid("raag needs a graph argument".into()))?;
            return Ok(Builtin::Raag(graph.parse()?));
        }
        let params: Vec<i64> = match args {
            Some(a) if !a.trim().is_empty() => a
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad parameter `{x}` in `{s}`"))))
                .collect::<Result<_>>()?,
            _ => vec![],
        };
        builtin_from_params(name, &params)
    }
}

fn builtin_from_params(name: &str, params: &[i64]) -> Result<Builtin> {
    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::Invalid(format!("builtin `{name}` takes {k} parameter(s), got {}", params.len())))
        }
    };
    let positive = |v: i64| -> Result<usize> {
        usize::try_from(v).ok().filter(|&v| v > 0).ok_or_else(|| Error::Invalid(format!("`{name}` needs a positive parameter")))
    };
    Ok(match name {
        "free" => {
            arity(1)?;
            Builtin::Free(positive(params[0])?)
        }
        "trefoil" => {
            arity(0)?;
            Builtin::Trefoil
        }
        "torus_knot" => {
            arity(2)?;
            Builtin::TorusKnot(params[0], params[1])
        }
        "dihedral_inf" => {
            arity(0)?;
            Builtin::DihedralInf
        }
        "heisenberg" => {
            arity(0)?;
            Builtin::Heisenberg
        }
        "heisenberg_commutator" => {
            arity(0)?;
            Builtin::HeisenbergCommutator
        }
        "baumslag_solitar" => {
            arity(1)?;
            Builtin::BaumslagSolitar(params[0])
        }
        "klein_bottle" => {
            arity(0)?;
            Builtin::KleinBottle
        }
        "commutator_power" => {
            arity(1)?;
            Builtin::CommutatorPower(params[0])
        }
        "pure_braid" => {
            arity(1)?;
            Builtin::PureBraid(positive(params[0])?)
        }
        _ => return Err(Error::Invalid(format!("unknown builtin `{name}`"))),
    })
}

/// Looks up a builtin by name; `raag` takes its graph through [`Builtin::Raag`]
/// or the string form `raag(n;u-v,...)`.
pub fn builtin_group(name: &str, params: &[i64]) -> Result<GroupPresentation> {
    builtin_from_params(name, params)?.presentation()
}
