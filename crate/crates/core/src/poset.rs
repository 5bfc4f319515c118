//! Finite posets stored as an element list plus cover relations.
//!
//! Element ids are positions in the list; builders take elements in the
//! caller's canonical order, so serialized output is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::parallel::map_ranges;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset<T> {
    elements: Vec<T>,
    covers: Vec<(usize, usize)>,
}

impl<T: Sync> Poset<T> {
    /// Builds the Hasse diagram of the order `leq` on `elements` by
    /// transitive reduction. Rows are split over `jobs` threads; the result
    /// does not depend on `jobs`.
    pub fn from_order<L>(elements: Vec<T>, leq: L, jobs: usize) -> Self
    where
        L: Fn(&T, &T) -> bool + Sync,
    {
        let len = elements.len();
        let above: Vec<FixedBitSet> = map_ranges(jobs, len, |rows| {
            rows.map(|a| {
                let mut set = FixedBitSet::with_capacity(len);
                for b in 0..len {
                    if a != b && leq(&elements[a], &elements[b]) {
                        set.insert(b);
                    }
                }
                set
            })
            .collect()
        });
        let covers = map_ranges(jobs, len, |rows| {
            let mut out = Vec::new();
            for a in rows {
                let mut indirect = FixedBitSet::with_capacity(len);
                for c in above[a].ones() {
                    indirect.union_with(&above[c]);
                }
                out.extend(above[a].difference(&indirect).map(|b| (a, b)));
            }
            out
        });
        Poset { elements, covers }
    }
}

impl<T> Poset<T> {
    /// Takes the cover relation as given; pairs are sorted and deduplicated.
    pub fn from_covers(elements: Vec<T>, mut covers: Vec<(usize, usize)>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        assert!(
            covers
                .iter()
                .all(|&(a, b)| a < elements.len() && b < elements.len() && a != b),
            "cover endpoints out of range"
        );
        Poset { elements, covers }
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// `(lower, upper)` id pairs, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut up = vec![Vec::new(); self.len()];
        let mut down = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            up[a].push(b);
            down[b].push(a);
        }
        (up, down)
    }

    /// For each element, the set of elements weakly above it.
    pub fn up_sets(&self) -> Vec<FixedBitSet> {
        let (up, _) = self.adjacency();
        (0..self.len())
            .map(|start| {
                let mut seen = FixedBitSet::with_capacity(self.len());
                let mut stack = vec![start];
                seen.insert(start);
                while let Some(v) = stack.pop() {
                    for &w in &up[v] {
                        if !seen.put(w) {
                            stack.push(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Elements with nothing below them.
    pub fn minimal(&self) -> Vec<usize> {
        let (_, down) = self.adjacency();
        (0..self.len()).filter(|&v| down[v].is_empty()).collect()
    }

    /// Elements with nothing above them.
    pub fn maximal(&self) -> Vec<usize> {
        let (up, _) = self.adjacency();
        (0..self.len()).filter(|&v| up[v].is_empty()).collect()
    }

    /// The same poset with the order reversed.
    pub fn dual(&self) -> Poset<T>
    where
        T: Clone,
    {
        Poset::from_covers(
            self.elements.clone(),
            self.covers.iter().map(|&(a, b)| (b, a)).collect(),
        )
    }

    /// Graphviz digraph, one edge per cover from lower to upper.
    pub fn to_dot(&self, name: &str, label: impl Fn(&T) -> String) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for (id, e) in self.elements.iter().enumerate() {
            writeln!(out, "  {id} [label=\"{}\"];", label(e)).unwrap();
        }
        for &(a, b) in &self.covers {
            writeln!(out, "  {a} -> {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Whether there is an order isomorphism onto `other`.
    pub fn is_isomorphic<U>(&self, other: &Poset<U>) -> bool {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return false;
        }
        let offset = self.len();
        let total = offset + other.len();
        let mut up = vec![Vec::new(); total];
        let mut down = vec![Vec::new(); total];
        for &(a, b) in &self.covers {
            up[a].push(b);
            down[b].push(a);
        }
        for &(a, b) in &other.covers {
            up[offset + a].push(offset + b);
            down[offset + b].push(offset + a);
        }
        let graph = Union {
            offset,
            up,
            down,
            self_covers: &self.covers,
            other_covers: &other.covers,
        };
        let mut levels = self.levels();
        levels.extend(other.levels());
        let initial: Vec<(usize, usize, usize)> = (0..total)
            .map(|v| (levels[v], graph.up[v].len(), graph.down[v].len()))
            .collect();
        graph.search(relabel(&initial))
    }

    /// Length of the longest chain from a minimal element.
    fn levels(&self) -> Vec<usize> {
        let (up, down) = self.adjacency();
        let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut level = vec![0; self.len()];
        let mut ready: Vec<usize> = (0..self.len()).filter(|&v| indegree[v] == 0).collect();
        while let Some(v) = ready.pop() {
            for &w in &up[v] {
                level[w] = level[w].max(level[v] + 1);
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        level
    }
}

/// Disjoint union of the two posets being compared; vertices of the second
/// are shifted by `offset`.
struct Union<'a> {
    offset: usize,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    self_covers: &'a [(usize, usize)],
    other_covers: &'a [(usize, usize)],
}

impl Union<'_> {
    /// Colour refinement to a stable partition. Colours are assigned on the
    /// union, so equal colours are comparable across the two sides.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_distinct(&colors);
        loop {
            let signatures: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let mut u: Vec<usize> = self.up[v].iter().map(|&w| colors[w]).collect();
                    let mut d: Vec<usize> = self.down[v].iter().map(|&w| colors[w]).collect();
                    u.sort_unstable();
                    d.sort_unstable();
                    (colors[v], u, d)
                })
                .collect();
            colors = relabel(&signatures);
            let next = count_distinct(&colors);
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn search(&self, colors: Vec<usize>) -> bool {
        let colors = self.refine(colors);
        let mut members: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let entry = members.entry(c).or_default();
            if v < self.offset {
                entry.0.push(v);
            } else {
                entry.1.push(v - self.offset);
            }
        }
        if members.values().any(|(l, r)| l.len() != r.len()) {
            return false;
        }
        let branch = members
            .values()
            .filter(|(l, _)| l.len() > 1)
            .min_by_key(|(l, _)| l.len());
        let Some((left, right)) = branch else {
            return self.check_bijection(&members);
        };
        let fresh = colors.len() + 1;
        let v = left[0];
        right.iter().any(|&w| {
            let mut next = colors.clone();
            next[v] = fresh;
            next[self.offset + w] = fresh;
            self.search(next)
        })
    }

    fn check_bijection(&self, members: &BTreeMap<usize, (Vec<usize>, Vec<usize>)>) -> bool {
        let mut map = vec![0; self.offset];
        for (l, r) in members.values() {
            map[l[0]] = r[0];
        }
        let mut image: Vec<(usize, usize)> = self
            .self_covers
            .iter()
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        image.sort_unstable();
        let mut target = self.other_covers.to_vec();
        target.sort_unstable();
        image == target
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Replaces each key by its rank among the distinct keys.
fn relabel<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<&K> = keys.iter().collect();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(&k).expect("present"))
        .collect()
}

/// The chain `0 < 1 < ... < len-1`.
pub fn chain(len: usize) -> Poset<usize> {
    Poset::from_covers((0..len).collect(), (1..len).map(|k| (k - 1, k)).collect())
}

pub fn antichain(len: usize) -> Poset<usize> {
    Poset::from_covers((0..len).collect(), Vec::new())
}
