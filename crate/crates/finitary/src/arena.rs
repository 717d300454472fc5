//! Explicit finite arenas.
//!
//! Vertices are dense ids. Successors are stored in CSR form, so an edge is
//! identified by its offset in the successor array.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;
use serde::Serialize;
use std::fmt::{self, Write as _};
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Player::Eve => 'E',
            Player::Adam => 'A',
        }
    }

    pub fn from_letter(s: &str) -> Option<Player> {
        match s {
            "E" | "e" | "Eve" | "eve" => Some(Player::Eve),
            "A" | "a" | "Adam" | "adam" => Some(Player::Adam),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    name: String,
    owner: Vec<Player>,
    color: Vec<u32>,
    max_color: u32,
    succ_off: Vec<usize>,
    succ: Vec<usize>,
    src: Vec<usize>,
    pred_off: Vec<usize>,
    pred: Vec<usize>,
}

/// Everything wrong with an arena. Empty iff the arena is legal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub dead_ends: Vec<usize>,
    pub bad_colors: Vec<(usize, u32)>,
    pub dangling: Vec<(usize, usize)>,
    pub max_color_zero: bool,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.dead_ends.is_empty()
            && self.bad_colors.is_empty()
            && self.dangling.is_empty()
            && !self.max_color_zero
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        if !self.dead_ends.is_empty() {
            parts.push(format!("dead ends {:?}", self.dead_ends));
        }
        if !self.bad_colors.is_empty() {
            parts.push(format!("colors out of range {:?}", self.bad_colors));
        }
        if !self.dangling.is_empty() {
            parts.push(format!("dangling edges {:?}", self.dangling));
        }
        if self.max_color_zero {
            parts.push("max color must be at least 1".into());
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// A subarena together with the id maps in both directions.
#[derive(Clone, Debug)]
pub struct SubArena {
    pub arena: Arena,
    pub to_new: Vec<Option<usize>>,
    pub to_old: Vec<usize>,
}

impl SubArena {
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_ids(self.to_new.len(), set.iter().map(|v| self.to_old[v]))
    }
}

impl Arena {
    /// Builds an arena without checking it. Dangling successors are kept in
    /// the successor lists but skipped in the predecessor index.
    pub fn from_parts(
        name: impl Into<String>,
        owner: Vec<Player>,
        color: Vec<u32>,
        max_color: u32,
        succs: Vec<Vec<usize>>,
    ) -> Arena {
        let n = owner.len();
        let mut succ_off = Vec::with_capacity(n + 1);
        let mut succ = Vec::new();
        let mut src = Vec::new();
        succ_off.push(0);
        for (v, list) in succs.iter().enumerate() {
            succ.extend_from_slice(list);
            src.extend(std::iter::repeat_n(v, list.len()));
            succ_off.push(succ.len());
        }
        let mut indeg = vec![0usize; n + 1];
        for &w in &succ {
            if w < n {
                indeg[w + 1] += 1;
            }
        }
        for i in 0..n {
            indeg[i + 1] += indeg[i];
        }
        let pred_off = indeg.clone();
        let mut fill = indeg;
        let mut pred = vec![0; *pred_off.last().unwrap_or(&0)];
        for (v, list) in succs.iter().enumerate() {
            for &w in list {
                if w < n {
                    pred[fill[w]] = v;
                    fill[w] += 1;
                }
            }
        }
        Arena {
            name: name.into(),
            owner,
            color,
            max_color,
            succ_off,
            succ,
            src,
            pred_off,
            pred,
        }
    }

    /// Checked constructor.
    pub fn new(
        name: impl Into<String>,
        owner: Vec<Player>,
        color: Vec<u32>,
        max_color: u32,
        succs: Vec<Vec<usize>>,
    ) -> Result<Arena> {
        if owner.len() != color.len() || owner.len() != succs.len() {
            return Err(Error::InvalidArena("length mismatch".into()));
        }
        let a = Arena::from_parts(name, owner, color, max_color, succs);
        let report = a.validate();
        if report.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidArena(report.to_string()))
        }
    }

    /// Büchi arena with colors 0 on `f` and 1 elsewhere.
    pub fn buchi(
        name: impl Into<String>,
        owner: Vec<Player>,
        f: &[usize],
        succs: Vec<Vec<usize>>,
    ) -> Result<Arena> {
        let color = (0..owner.len())
            .map(|v| if f.contains(&v) { 0 } else { 1 })
            .collect();
        Arena::new(name, owner, color, 1, succs)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.num_vertices();
        let mut r = ValidationReport {
            max_color_zero: self.max_color == 0,
            ..Default::default()
        };
        for v in 0..n {
            if self.succ(v).is_empty() {
                r.dead_ends.push(v);
            }
            if self.color[v] > self.max_color {
                r.bad_colors.push((v, self.color[v]));
            }
            for &w in self.succ(v) {
                if w >= n {
                    r.dangling.push((v, w));
                }
            }
        }
        r
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Arena {
        self.name = name.into();
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.len()
    }

    pub fn vertices(&self) -> Range<usize> {
        0..self.num_vertices()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn color(&self, v: usize) -> u32 {
        self.color[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    pub fn max_color(&self) -> u32 {
        self.max_color
    }

    pub fn succ(&self, v: usize) -> &[usize] {
        &self.succ[self.succ_off[v]..self.succ_off[v + 1]]
    }

    pub fn pred(&self, v: usize) -> &[usize] {
        &self.pred[self.pred_off[v]..self.pred_off[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ_off[v + 1] - self.succ_off[v]
    }

    /// Edge ids leaving `v`.
    pub fn edges(&self, v: usize) -> Range<usize> {
        self.succ_off[v]..self.succ_off[v + 1]
    }

    pub fn edge_source(&self, e: usize) -> usize {
        self.src[e]
    }

    pub fn edge_target(&self, e: usize) -> usize {
        self.succ[e]
    }

    /// Id of the first edge `v -> w`.
    pub fn edge_id(&self, v: usize, w: usize) -> Option<usize> {
        self.edges(v).find(|&e| self.succ[e] == w)
    }

    pub fn vertices_of(&self, p: Player) -> VertexSet {
        VertexSet::from_fn(self.num_vertices(), |v| self.owner[v] == p)
    }

    /// `color⁻¹(0)`.
    pub fn buchi_set(&self) -> VertexSet {
        VertexSet::from_fn(self.num_vertices(), |v| self.color[v] == 0)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.num_vertices())
    }

    /// Odd colors that occur on some vertex.
    pub fn odd_colors(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.color.iter().copied().filter(|c| c % 2 == 1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Same graph with the owners exchanged.
    pub fn swap_owners(&self) -> Arena {
        let mut a = self.clone();
        for o in a.owner.iter_mut() {
            *o = o.opponent();
        }
        a
    }

    /// Same graph with new colors.
    pub fn recolor(&self, color: Vec<u32>, max_color: u32) -> Arena {
        let mut a = self.clone();
        a.color = color;
        a.max_color = max_color;
        a
    }

    /// Vertices of `u` without a successor in `u`.
    pub fn subarena_violations(&self, u: &VertexSet) -> Vec<usize> {
        u.iter()
            .filter(|&v| !self.succ(v).iter().any(|&w| u.contains(w)))
            .collect()
    }

    /// The subarena induced by `u`, re-indexed in increasing id order.
    pub fn restrict(&self, u: &VertexSet) -> Result<SubArena> {
        let bad = self.subarena_violations(u);
        if !bad.is_empty() {
            return Err(Error::NotASubarena(bad));
        }
        let to_old: Vec<usize> = u.to_vec();
        let mut to_new = vec![None; self.num_vertices()];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let succs = to_old
            .iter()
            .map(|&v| self.succ(v).iter().filter_map(|&w| to_new[w]).collect())
            .collect();
        let arena = Arena::from_parts(
            self.name.clone(),
            to_old.iter().map(|&v| self.owner[v]).collect(),
            to_old.iter().map(|&v| self.color[v]).collect(),
            self.max_color,
            succs,
        );
        Ok(SubArena {
            arena,
            to_new,
            to_old,
        })
    }

    /// Parses the line based text format.
    pub fn parse(text: &str) -> Result<Arena> {
        let mut header: Option<(String, u32)> = None;
        let mut rows: Vec<(usize, Player, u32, Vec<usize>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if toks.len() != 4 || toks[0] != "arena" || toks[2] != "maxcolor" {
                    return Err(err("expected `arena <name> maxcolor <d>`"));
                }
                let d = toks[3].parse().map_err(|_| err("bad max color"))?;
                header = Some((toks[1].to_string(), d));
                continue;
            }
            if toks.len() != 4 {
                return Err(err("expected `<id> <E|A> <color> <succ,...>`"));
            }
            let id: usize = toks[0].parse().map_err(|_| err("bad vertex id"))?;
            let p = Player::from_letter(toks[1]).ok_or_else(|| err("owner must be E or A"))?;
            let c: u32 = toks[2].parse().map_err(|_| err("bad color"))?;
            let succ = toks[3]
                .split(',')
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("bad successor list"))?;
            rows.push((id, p, c, succ));
        }
        let (name, d) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let n = rows.len();
        let mut owner = vec![None; n];
        let mut color = vec![0; n];
        let mut succs = vec![Vec::new(); n];
        for (id, p, c, s) in rows {
            if id >= n || owner[id].is_some() {
                return Err(Error::InvalidArena(format!(
                    "vertex ids must be exactly 0..{n}, got {id}"
                )));
            }
            owner[id] = Some(p);
            color[id] = c;
            succs[id] = s;
        }
        let owner = owner.into_iter().map(|o| o.unwrap()).collect();
        Arena::new(name, owner, color, d, succs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("arena {} maxcolor {}\n", self.name, self.max_color);
        for v in self.vertices() {
            let succ: Vec<String> = self.succ(v).iter().map(|w| w.to_string()).collect();
            let _ = writeln!(
                s,
                "{} {} {} {}",
                v,
                self.owner[v],
                self.color[v],
                succ.join(",")
            );
        }
        s
    }

    /// Graphviz rendering. Eve circles, Adam squares, color 0 doubled.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n", self.name);
        for v in self.vertices() {
            let shape = match (self.owner[v], self.color[v] == 0) {
                (Player::Eve, false) => "circle",
                (Player::Eve, true) => "doublecircle",
                (Player::Adam, false) => "square",
                (Player::Adam, true) => "Msquare",
            };
            let _ = writeln!(
                s,
                "  v{v} [shape={shape}, label=\"v{v}\\n{}\"];",
                self.color[v]
            );
        }
        for v in self.vertices() {
            for &w in self.succ(v) {
                let _ = writeln!(s, "  v{v} -> v{w};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> Arena {
        Arena::buchi(
            "fig3",
            vec![Player::Adam; 3],
            &[0, 2],
            vec![vec![0, 1], vec![2], vec![2]],
        )
        .unwrap()
    }

    #[test]
    fn self_loop_is_legal() {
        let a = Arena::from_parts("one", vec![Player::Eve], vec![0], 1, vec![vec![0]]);
        assert!(a.validate().is_empty());
    }

    #[test]
    fn dead_end_is_reported() {
        let a = Arena::from_parts(
            "two",
            vec![Player::Eve, Player::Eve],
            vec![0, 1],
            1,
            vec![vec![1], vec![]],
        );
        assert_eq!(a.validate().dead_ends, vec![1]);
    }

    #[test]
    fn dangling_and_colors_reported() {
        let a = Arena::from_parts("x", vec![Player::Eve], vec![5], 1, vec![vec![3]]);
        let r = a.validate();
        assert_eq!(r.dangling, vec![(0, 3)]);
        assert_eq!(r.bad_colors, vec![(0, 5)]);
        assert!(Arena::new("x", vec![Player::Eve], vec![5], 1, vec![vec![3]]).is_err());
    }

    #[test]
    fn restrict_cases() {
        let a = fig3();
        let s = a.restrict(&VertexSet::from_ids(3, [2])).unwrap();
        assert_eq!(s.arena.num_vertices(), 1);
        assert_eq!(s.arena.succ(0), &[0]);
        assert_eq!(
            a.restrict(&VertexSet::from_ids(3, [1])).unwrap_err(),
            Error::NotASubarena(vec![1])
        );
        let full = a.restrict(&a.full_set()).unwrap();
        assert_eq!(full.arena, a);
    }

    #[test]
    fn text_round_trip() {
        let a = fig3();
        let t = a.to_text();
        assert_eq!(Arena::parse(&t).unwrap(), a);
        assert!(t.starts_with("arena fig3 maxcolor 1\n0 A 0 0,1\n"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Arena::parse("arena x maxcolor 1\n0 Q 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Arena::parse("# nothing\n").is_err());
        assert!(Arena::parse("arena x maxcolor 1\n1 E 0 0\n").is_err());
    }

    #[test]
    fn predecessors() {
        let a = fig3();
        assert_eq!(a.pred(2), &[1, 2]);
        assert_eq!(a.pred(0), &[0]);
        assert_eq!(a.edge_id(0, 1), Some(1));
        assert_eq!(a.edge_source(3), 2);
    }
}
