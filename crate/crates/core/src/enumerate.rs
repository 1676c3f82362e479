//! Brute-force enumeration of small trees, paths and set partitions.
//!
//! Counts here come from listing the objects themselves, so they serve as
//! definition-level oracles for the exact module.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use crate::digits::Natural;
use crate::error::{Error, Result};

/// A binary tree: each vertex has a distinguished left and right subtree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Empty,
    Node(Rc<BinaryTree>, Rc<BinaryTree>),
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree::Node(Rc::new(BinaryTree::Empty), Rc::new(BinaryTree::Empty))
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Rc::new(left), Rc::new(right))
    }

    pub fn vertices(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.vertices() + r.vertices(),
        }
    }

    /// Canonical form up to swapping the two subtrees at any vertex.
    pub fn canonical(&self) -> String {
        match self {
            BinaryTree::Empty => ".".to_string(),
            BinaryTree::Node(l, r) => {
                let (a, b) = (l.canonical(), r.canonical());
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                format!("({a}{b})")
            }
        }
    }
}

/// A plane tree in which every vertex has at most two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree012 {
    Leaf,
    Unary(Rc<Tree012>),
    Binary(Rc<Tree012>, Rc<Tree012>),
}

impl Tree012 {
    pub fn edges(&self) -> usize {
        match self {
            Tree012::Leaf => 0,
            Tree012::Unary(c) => 1 + c.edges(),
            Tree012::Binary(a, b) => 2 + a.edges() + b.edges(),
        }
    }

    /// Reflection in the vertical line through the root.
    pub fn mirror(&self) -> Tree012 {
        match self {
            Tree012::Leaf => Tree012::Leaf,
            Tree012::Unary(c) => Tree012::Unary(Rc::new(c.mirror())),
            Tree012::Binary(a, b) => Tree012::Binary(Rc::new(b.mirror()), Rc::new(a.mirror())),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }
}

/// A tree whose vertices have children in some of three positions (left,
/// middle, right), never in two adjacent positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HexTree {
    pub children: [Option<Rc<HexTree>>; 3],
}

impl HexTree {
    pub fn edges(&self) -> usize {
        self.children.iter().flatten().map(|c| 1 + c.edges()).sum()
    }

    pub fn is_valid(&self) -> bool {
        let [l, m, r] = &self.children;
        let adjacent = (l.is_some() && m.is_some()) || (m.is_some() && r.is_some());
        !adjacent && self.children.iter().flatten().all(|c| c.is_valid())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathVariant {
    Path,
    Prefix,
    Symmetric,
}

/// Largest sizes the enumerators will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBounds {
    pub binary: u64,
    pub trees012: u64,
    pub paths: u64,
    pub hex: u64,
    pub partitions: u64,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds { binary: 12, trees012: 12, paths: 16, hex: 10, partitions: 7 }
    }
}

fn check(what: &'static str, n: u64, bound: u64) -> Result<()> {
    if n > bound {
        Err(Error::BoundExceeded { what, n, bound })
    } else {
        Ok(())
    }
}

/// One orbit in the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub canonical: String,
    /// Orbit size from the recursive formula.
    pub size: Natural,
    /// Number of enumerated trees with this canonical form.
    pub members: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub n: u64,
    /// Orbits in ascending canonical order.
    pub orbits: Vec<Orbit>,
    /// Exponent of 2 in the orbit size, mapped to the number of such orbits.
    pub by_omega: BTreeMap<u64, u64>,
}

impl EnumBounds {
    /// All binary trees on `n` vertices, each once.
    pub fn binary_trees(&self, n: u64) -> Result<Vec<BinaryTree>> {
        check("binary_trees", n, self.binary)?;
        let mut by_size: Vec<Vec<Rc<BinaryTree>>> = vec![vec![Rc::new(BinaryTree::Empty)]];
        for k in 1..=n as usize {
            let mut level = Vec::new();
            for left_size in 0..k {
                for l in &by_size[left_size] {
                    for r in &by_size[k - 1 - left_size] {
                        level.push(Rc::new(BinaryTree::Node(Rc::clone(l), Rc::clone(r))));
                    }
                }
            }
            by_size.push(level);
        }
        let last = by_size.pop().expect("nonempty");
        Ok(last.into_iter().map(|t| (*t).clone()).collect())
    }

    /// Binary trees on `n` vertices grouped into orbits by canonical form.
    pub fn orbit_census(&self, n: u64) -> Result<OrbitCensus> {
        let trees = self.binary_trees(n)?;
        let mut classes: HashMap<String, (u64, BinaryTree)> = HashMap::new();
        for t in trees {
            let key = t.canonical();
            classes.entry(key).or_insert((0, t)).0 += 1;
        }
        let mut orbits: Vec<Orbit> = classes
            .into_iter()
            .map(|(canonical, (members, rep))| Orbit { canonical, size: orbit_size(&rep), members })
            .collect();
        orbits.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        let mut by_omega = BTreeMap::new();
        for o in &orbits {
            let omega = o.size.trailing_zeros().unwrap_or(0);
            *by_omega.entry(omega).or_insert(0) += 1;
        }
        Ok(OrbitCensus { n, orbits, by_omega })
    }

    /// 0-1-2 trees with `n` edges, optionally only the mirror-symmetric ones.
    pub fn trees012(&self, n: u64, symmetric_only: bool) -> Result<u64> {
        check("trees012", n, self.trees012)?;
        let mut by_size: Vec<Vec<Rc<Tree012>>> = vec![vec![Rc::new(Tree012::Leaf)]];
        for k in 1..=n as usize {
            let mut level = Vec::new();
            for c in &by_size[k - 1] {
                level.push(Rc::new(Tree012::Unary(Rc::clone(c))));
            }
            if k >= 2 {
                for a_size in 0..=k - 2 {
                    for a in &by_size[a_size] {
                        for b in &by_size[k - 2 - a_size] {
                            level.push(Rc::new(Tree012::Binary(Rc::clone(a), Rc::clone(b))));
                        }
                    }
                }
            }
            by_size.push(level);
        }
        let last = &by_size[n as usize];
        Ok(last.iter().filter(|t| !symmetric_only || t.is_symmetric()).count() as u64)
    }

    /// Motzkin paths of length `n` (steps up, down, level; never below the
    /// axis), their prefixes, or the paths symmetric about `x = n/2`.
    pub fn motzkin_paths(&self, n: u64, variant: PathVariant) -> Result<u64> {
        check("motzkin_paths", n, self.paths)?;
        let mut steps = Vec::with_capacity(n as usize);
        Ok(walk(&mut steps, 0, n as usize, variant))
    }

    /// Hex trees with `n` edges.
    pub fn hex_trees(&self, n: u64) -> Result<u64> {
        check("hex_trees", n, self.hex)?;
        let mut by_size: Vec<Vec<Rc<HexTree>>> = vec![vec![Rc::new(HexTree { children: [None, None, None] })]];
        for k in 1..=n as usize {
            let mut level = Vec::new();
            for pos in 0..3 {
                for c in &by_size[k - 1] {
                    let mut children = [None, None, None];
                    children[pos] = Some(Rc::clone(c));
                    level.push(Rc::new(HexTree { children }));
                }
            }
            if k >= 2 {
                for l_size in 0..=k - 2 {
                    for l in &by_size[l_size] {
                        for r in &by_size[k - 2 - l_size] {
                            let children = [Some(Rc::clone(l)), None, Some(Rc::clone(r))];
                            level.push(Rc::new(HexTree { children }));
                        }
                    }
                }
            }
            by_size.push(level);
        }
        Ok(by_size[n as usize].len() as u64)
    }

    /// Total binary partitions of a `d`-element set: unordered trees whose
    /// root is labelled by the set, whose leaves are its singletons, and
    /// whose internal vertices split their label into two disjoint nonempty
    /// child labels.
    pub fn total_binary_partitions(&self, d: u64) -> Result<u64> {
        check("total_binary_partitions", d, self.partitions)?;
        if d == 0 {
            return Ok(0);
        }
        let full: u32 = (1u32 << d) - 1;
        let mut memo: HashMap<u32, Vec<String>> = HashMap::new();
        Ok(partitions(full, &mut memo).len() as u64)
    }
}

fn walk(steps: &mut Vec<i8>, height: i64, n: usize, variant: PathVariant) -> u64 {
    if steps.len() == n {
        return match variant {
            PathVariant::Prefix => 1,
            PathVariant::Path => u64::from(height == 0),
            PathVariant::Symmetric => {
                let mirrored = (0..n).all(|i| steps[i] == -steps[n - 1 - i]);
                u64::from(height == 0 && mirrored)
            }
        };
    }
    let mut total = 0;
    for step in [1i8, 0, -1] {
        let h = height + i64::from(step);
        if h < 0 {
            continue;
        }
        steps.push(step);
        total += walk(steps, h, n, variant);
        steps.pop();
    }
    total
}

/// Canonical strings of all total binary partitions of the set `mask`;
/// every ordered split is generated and duplicates are removed by the
/// canonical form.
fn partitions(mask: u32, memo: &mut HashMap<u32, Vec<String>>) -> Vec<String> {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let result = if mask.count_ones() == 1 {
        vec![format!("{}", mask.trailing_zeros())]
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut a = (mask - 1) & mask;
        while a > 0 {
            let b = mask ^ a;
            for x in partitions(a, memo) {
                for y in partitions(b, memo) {
                    let (p, q) = if x <= y { (&x, &y) } else { (&y, &x) };
                    let key = format!("[{p},{q}]");
                    if seen.insert(key.clone()) {
                        out.push(key);
                    }
                }
            }
            a = (a - 1) & mask;
        }
        out.sort();
        out
    };
    memo.insert(mask, result.clone());
    result
}

/// Orbit size of a binary tree: 1 for the empty tree, `|O(L)|²` when the two
/// subtrees are isomorphic as unordered trees, `2·|O(L)|·|O(R)|` otherwise.
pub fn orbit_size(t: &BinaryTree) -> Natural {
    fn go(t: &BinaryTree) -> (String, Natural) {
        match t {
            BinaryTree::Empty => (".".to_string(), Natural::from(1u32)),
            BinaryTree::Node(l, r) => {
                let (cl, sl) = go(l);
                let (cr, sr) = go(r);
                let size = if cl == cr { &sl * &sl } else { sl * sr * 2u32 };
                let (a, b) = if cl <= cr { (cl, cr) } else { (cr, cl) };
                (format!("({a}{b})"), size)
            }
        }
    }
    go(t).1
}

pub fn binary_trees(n: u64) -> Result<Vec<BinaryTree>> {
    EnumBounds::default().binary_trees(n)
}

pub fn orbit_census(n: u64) -> Result<OrbitCensus> {
    EnumBounds::default().orbit_census(n)
}

pub fn trees012(n: u64, symmetric_only: bool) -> Result<u64> {
    EnumBounds::default().trees012(n, symmetric_only)
}

pub fn motzkin_paths(n: u64, variant: PathVariant) -> Result<u64> {
    EnumBounds::default().motzkin_paths(n, variant)
}

pub fn hex_trees(n: u64) -> Result<u64> {
    EnumBounds::default().hex_trees(n)
}

pub fn total_binary_partitions(d: u64) -> Result<u64> {
    EnumBounds::default().total_binary_partitions(d)
}
