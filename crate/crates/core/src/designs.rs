//! Resolvable transversal designs and packings.
//!
//! A `TD(s, g)` here has point ids `0..s*g`, group `i` being the contiguous
//! range `i*g..(i+1)*g`. Blocks are stored as point lists in group order and
//! parallel classes as lists of block indices.

use std::fmt::Write as _;

use crate::disjunct::DisjunctMatrix;
use crate::error::{Error, Result};
use crate::finite_field::FieldSpec;

/// Pair enumeration cap for the verifiers.
pub const MAX_VERIFY_POINTS: usize = 10_000;
pub const MAX_LINEAR_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalDesign {
    s: usize,
    g: usize,
    blocks: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
}

impl TransversalDesign {
    /// Wraps raw data without checking it; use [`verify_td`] for that.
    pub fn from_parts(s: usize, g: usize, blocks: Vec<Vec<usize>>, classes: Vec<Vec<usize>>) -> Self {
        TransversalDesign { s, g, blocks, classes }
    }

    pub fn group_count(&self) -> usize {
        self.s
    }

    pub fn group_size(&self) -> usize {
        self.g
    }

    pub fn point_count(&self) -> usize {
        self.s * self.g
    }

    pub fn group_of(&self, point: usize) -> usize {
        point / self.g
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [Vec<usize>] {
        &mut self.blocks
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("td {} {}\n", self.s, self.g);
        write_classes(&mut s, &self.blocks, &self.classes);
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (header, blocks, classes) = read_classes(text)?;
        match header.as_slice() {
            ["td", s, g] => Ok(TransversalDesign {
                s: parse_num(s, 1)?,
                g: parse_num(g, 1)?,
                blocks,
                classes,
            }),
            _ => Err(Error::parse(1, "expected `td s g`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingDesign {
    t: usize,
    points: usize,
    block_size: usize,
    blocks: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
}

impl PackingDesign {
    pub fn from_parts(
        t: usize,
        points: usize,
        block_size: usize,
        blocks: Vec<Vec<usize>>,
        classes: Vec<Vec<usize>>,
    ) -> Self {
        PackingDesign {
            t,
            points,
            block_size,
            blocks,
            classes,
        }
    }

    pub fn strength(&self) -> usize {
        self.t
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "packing {} {} {} {}\n",
            self.t,
            self.points,
            self.block_size,
            self.classes.len()
        );
        write_classes(&mut s, &self.blocks, &self.classes);
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (header, blocks, classes) = read_classes(text)?;
        match header.as_slice() {
            ["packing", t, points, size, count] => {
                let count: usize = parse_num(count, 1)?;
                if count != classes.len() {
                    return Err(Error::parse(1, format!("header says {count} classes, found {}", classes.len())));
                }
                Ok(PackingDesign {
                    t: parse_num(t, 1)?,
                    points: parse_num(points, 1)?,
                    block_size: parse_num(size, 1)?,
                    blocks,
                    classes,
                })
            }
            _ => Err(Error::parse(1, "expected `packing t points s' classes`")),
        }
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|e: std::num::ParseIntError| Error::parse(line, e.to_string()))
}

fn write_classes(out: &mut String, blocks: &[Vec<usize>], classes: &[Vec<usize>]) {
    for (ci, class) in classes.iter().enumerate() {
        if ci > 0 {
            out.push('\n');
        }
        for &b in class {
            let line: Vec<String> = blocks[b].iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
}

/// Header words, blocks, classes.
type Parsed<'a> = (Vec<&'a str>, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Reads blocks grouped into classes; block indices follow file order.
fn read_classes(text: &str) -> Result<Parsed<'_>> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, h)) => h.split_whitespace().collect(),
        None => return Err(Error::parse(1, "empty input")),
    };
    let mut blocks = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            if !current.is_empty() {
                classes.push(std::mem::take(&mut current));
            }
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|t| parse_num(t, i + 1))
            .collect::<Result<Vec<_>>>()?;
        current.push(blocks.len());
        blocks.push(block);
    }
    if !current.is_empty() {
        classes.push(current);
    }
    Ok((header, blocks, classes))
}

/// TD(q, q) from lines `y -> a*y + b` over F_q.
///
/// Point `(y, z)` has id `y*q + z`; block `beta_{a,b}` has index `a*q + b`;
/// class `a` holds the blocks `beta_{a,0..q}`.
pub fn td_linear(f: &FieldSpec) -> Result<TransversalDesign> {
    let q = f.order();
    if q > MAX_LINEAR_ORDER {
        return Err(Error::InvalidParameter(format!("q={q} exceeds {MAX_LINEAR_ORDER}")));
    }
    let qu = q as usize;
    let mut blocks = Vec::with_capacity(qu * qu);
    for a in f.elements() {
        for b in f.elements() {
            blocks.push(
                f.elements()
                    .map(|y| y as usize * qu + f.add(f.mul(a, y), b) as usize)
                    .collect(),
            );
        }
    }
    let classes = (0..qu).map(|a| (a * qu..(a + 1) * qu).collect()).collect();
    Ok(TransversalDesign {
        s: qu,
        g: qu,
        blocks,
        classes,
    })
}

/// Keeps the first `s_prime` groups and restricts every block to them.
pub fn td_delete_groups(t: &TransversalDesign, s_prime: usize) -> Result<TransversalDesign> {
    if s_prime < 2 || s_prime > t.s {
        return Err(Error::InvalidParameter(format!(
            "kept group count {s_prime} outside 2..={}",
            t.s
        )));
    }
    let limit = s_prime * t.g;
    let blocks = t
        .blocks
        .iter()
        .map(|b| b.iter().copied().filter(|&p| p < limit).collect())
        .collect();
    Ok(TransversalDesign {
        s: s_prime,
        g: t.g,
        blocks,
        classes: t.classes.clone(),
    })
}

/// Deletes groups down to `s_prime` and keeps the first `g_prime` classes,
/// giving a 2-(s'g, s', 1) packing.
pub fn td_to_packing(t: &TransversalDesign, s_prime: usize, g_prime: usize) -> Result<PackingDesign> {
    if g_prime < 1 || g_prime > t.classes.len() {
        return Err(Error::InvalidParameter(format!(
            "class count {g_prime} outside 1..={}",
            t.classes.len()
        )));
    }
    let cut = td_delete_groups(t, s_prime)?;
    let mut blocks = Vec::new();
    let mut classes = Vec::with_capacity(g_prime);
    for class in &cut.classes[..g_prime] {
        let mut ids = Vec::with_capacity(class.len());
        for &b in class {
            ids.push(blocks.len());
            blocks.push(cut.blocks[b].clone());
        }
        classes.push(ids);
    }
    Ok(PackingDesign {
        t: 2,
        points: s_prime * t.g,
        block_size: s_prime,
        blocks,
        classes,
    })
}

/// TD(s, g) x TD(s, g') -> TD(s, g*g').
///
/// Point `(i, x, x')` gets id `i*g*g' + x*g' + x'` where `x`, `x'` are the
/// positions within group `i`. Class `(j, j')` has index `j*c' + j'`.
pub fn td_product(a: &TransversalDesign, b: &TransversalDesign) -> Result<TransversalDesign> {
    if a.s != b.s {
        return Err(Error::InvalidParameter(format!(
            "group counts differ: {} vs {}",
            a.s, b.s
        )));
    }
    let s = a.s;
    let gg = a.g * b.g;
    let mut blocks = Vec::new();
    let mut classes = Vec::new();
    for ca in &a.classes {
        for cb in &b.classes {
            let mut ids = Vec::with_capacity(ca.len() * cb.len());
            for &ba in ca {
                for &bb in cb {
                    let mut block = Vec::with_capacity(s);
                    for (&pa, &pb) in a.blocks[ba].iter().zip(&b.blocks[bb]) {
                        let i = pa / a.g;
                        block.push(i * gg + (pa % a.g) * b.g + pb % b.g);
                    }
                    ids.push(blocks.len());
                    blocks.push(block);
                }
            }
            classes.push(ids);
        }
    }
    Ok(TransversalDesign {
        s,
        g: gg,
        blocks,
        classes,
    })
}

fn check_point_cap(points: usize) -> Result<()> {
    if points > MAX_VERIFY_POINTS {
        return Err(Error::BudgetExceeded {
            needed: points as u128,
            budget: MAX_VERIFY_POINTS as u128,
        });
    }
    Ok(())
}

/// Each class must hit every point exactly once.
fn classes_partition(points: usize, blocks: &[Vec<usize>], classes: &[Vec<usize>]) -> bool {
    let mut used = vec![false; blocks.len()];
    for class in classes {
        let mut seen = vec![false; points];
        for &b in class {
            if b >= blocks.len() || used[b] {
                return false;
            }
            used[b] = true;
            for &p in &blocks[b] {
                if p >= points || seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        if seen.iter().any(|&x| !x) {
            return false;
        }
    }
    true
}

/// Checks every TD axiom by enumeration, including resolvability.
pub fn verify_td(t: &TransversalDesign) -> Result<bool> {
    let points = t.point_count();
    check_point_cap(points)?;
    if t.g == 0 {
        return Ok(t.blocks.is_empty());
    }
    // each block meets each group exactly once
    for block in &t.blocks {
        if block.len() != t.s {
            return Ok(false);
        }
        let mut hit = vec![false; t.s];
        for &p in block {
            if p >= points || hit[p / t.g] {
                return Ok(false);
            }
            hit[p / t.g] = true;
        }
    }
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); points];
    for (bi, block) in t.blocks.iter().enumerate() {
        for &p in block {
            through[p].push(bi);
        }
    }
    // cross-group pairs covered exactly once, same-group pairs never
    let mut count = vec![0u32; points];
    for (x, blocks) in through.iter().enumerate() {
        count.fill(0);
        for &bi in blocks {
            for &y in &t.blocks[bi] {
                count[y] += 1;
            }
        }
        for (y, &c) in count.iter().enumerate() {
            if y == x {
                continue;
            }
            let want = u32::from(t.group_of(x) != t.group_of(y));
            if c != want {
                return Ok(false);
            }
        }
    }
    let covered: usize = t.classes.iter().map(Vec::len).sum();
    Ok(covered == t.blocks.len() && classes_partition(points, &t.blocks, &t.classes))
}

/// Checks that every t-subset lies in at most one block (via pairwise
/// block intersections of size at most t-1) and that classes partition the
/// points.
pub fn verify_packing(p: &PackingDesign, t: usize) -> Result<bool> {
    check_point_cap(p.points)?;
    if t == 0 {
        return Err(Error::InvalidParameter("strength must be positive".into()));
    }
    let mut sets = Vec::with_capacity(p.blocks.len());
    for block in &p.blocks {
        if block.len() != p.block_size {
            return Ok(false);
        }
        let mut sorted = block.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != block.len() || sorted.last().is_some_and(|&x| x >= p.points) {
            return Ok(false);
        }
        sets.push(sorted);
    }
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sorted_overlap(&sets[a], &sets[b]) >= t {
                return Ok(false);
            }
        }
    }
    Ok(classes_partition(p.points, &p.blocks, &p.classes))
}

fn sorted_overlap(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Points x blocks membership matrix with order `floor((s'-1)/(t-1))`.
pub fn incidence_matrix(p: &PackingDesign) -> Result<DisjunctMatrix> {
    if p.t < 2 {
        return Err(Error::InvalidParameter("incidence order needs t >= 2".into()));
    }
    let order = p.block_size.saturating_sub(1) / (p.t - 1);
    let cols = p
        .blocks
        .iter()
        .map(|b| crate::bits::BitRow::from_indices(p.points, b.iter().copied()))
        .collect();
    let tag = format!(
        "packing {}-({},{},1) classes={}",
        p.t,
        p.points,
        p.block_size,
        p.classes.len()
    );
    DisjunctMatrix::from_columns(p.points, cols, order, tag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn td_linear_q2_blocks() {
        let t = td_linear(&gf(2)).unwrap();
        // (y,z) -> 2y+z
        assert_eq!(t.blocks(), &[vec![0, 2], vec![1, 3], vec![0, 3], vec![1, 2]]);
        assert_eq!(t.classes(), &[vec![0, 1], vec![2, 3]]);
        assert!(verify_td(&t).unwrap());
    }

    #[test]
    fn td_linear_counts_and_validity() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let t = td_linear(&gf(q)).unwrap();
            let q = q as usize;
            assert_eq!(t.blocks().len(), q * q);
            let mut rep = vec![0; q * q];
            for b in t.blocks() {
                for &p in b {
                    rep[p] += 1;
                }
            }
            assert!(rep.iter().all(|&c| c == q));
            assert!(verify_td(&t).unwrap(), "q={q}");
            // a = 0: constant second coordinate
            for b in 0..q {
                assert!(t.blocks()[b].iter().all(|&p| p % q == b));
            }
        }
    }

    #[test]
    fn mutation_breaks_td() {
        let mut t = td_linear(&gf(5)).unwrap();
        // move one point of block 7 into the neighbouring group
        let p = t.blocks()[7][1];
        t.blocks_mut()[7][1] = (p + 5) % 25;
        assert!(!verify_td(&t).unwrap());
    }

    #[test]
    fn delete_groups() {
        let t = td_linear(&gf(5)).unwrap();
        let c = td_delete_groups(&t, 3).unwrap();
        assert_eq!((c.group_count(), c.point_count(), c.blocks().len()), (3, 15, 25));
        assert_eq!(c.classes().len(), 5);
        assert!(verify_td(&c).unwrap());
        assert_eq!(td_delete_groups(&t, 5).unwrap(), t);
        assert!(td_delete_groups(&t, 1).is_err());
    }

    #[test]
    fn packing_from_td() {
        let t = td_linear(&gf(5)).unwrap();
        let p = td_to_packing(&t, 3, 5).unwrap();
        assert_eq!((p.point_count(), p.block_size(), p.blocks().len()), (15, 3, 25));
        assert!(verify_packing(&p, 2).unwrap());
        assert!(td_to_packing(&t, 3, 0).is_err());
        let full = td_to_packing(&t, 5, 5).unwrap();
        assert_eq!(full.blocks(), t.blocks());
    }

    #[test]
    fn empty_packing_is_vacuous() {
        let p = PackingDesign::from_parts(2, 6, 3, vec![], vec![]);
        assert!(verify_packing(&p, 2).unwrap());
    }

    #[test]
    fn overlapping_blocks_fail_packing() {
        let p = PackingDesign::from_parts(2, 4, 2, vec![vec![0, 1], vec![1, 0]], vec![]);
        assert!(!verify_packing(&p, 2).unwrap());
    }

    #[test]
    fn products() {
        let t2 = td_linear(&gf(2)).unwrap();
        let p = td_product(&t2, &t2).unwrap();
        assert_eq!((p.group_count(), p.group_size(), p.blocks().len(), p.classes().len()), (2, 4, 16, 4));
        assert!(verify_td(&p).unwrap());
        let t3 = td_delete_groups(&td_linear(&gf(3)).unwrap(), 2).unwrap();
        let p23 = td_product(&t2, &t3).unwrap();
        assert_eq!((p23.group_size(), p23.blocks().len()), (6, 36));
        assert!(verify_td(&p23).unwrap());
        assert!(td_product(&t2, &td_linear(&gf(3)).unwrap()).is_err());
        for (qa, qb, s) in [(3, 4, 3), (4, 5, 3), (5, 7, 4), (3, 3, 3), (4, 4, 2)] {
            let a = td_delete_groups(&td_linear(&gf(qa)).unwrap(), s).unwrap();
            let b = td_delete_groups(&td_linear(&gf(qb)).unwrap(), s).unwrap();
            assert!(verify_td(&td_product(&a, &b).unwrap()).unwrap(), "{qa}x{qb}");
        }
    }

    #[test]
    fn unit_factor_relabels() {
        let t = td_delete_groups(&td_linear(&gf(3)).unwrap(), 2).unwrap();
        let unit = TransversalDesign::from_parts(2, 1, vec![vec![0, 1]], vec![vec![0]]);
        assert!(verify_td(&unit).unwrap());
        let p = td_product(&t, &unit).unwrap();
        assert_eq!(p, t);
    }

    #[test]
    fn incidence_of_small_packings() {
        let t = td_linear(&gf(5)).unwrap();
        let h = incidence_matrix(&td_to_packing(&t, 3, 5).unwrap()).unwrap();
        assert_eq!((h.r(), h.n(), h.order()), (15, 25, 2));
        assert_eq!((h.min_row_weight(), h.max_row_weight()), (5, 5));
        assert_eq!((h.min_col_weight(), h.max_col_weight()), (3, 3));
        let t2 = td_linear(&gf(2)).unwrap();
        let h2 = incidence_matrix(&td_to_packing(&t2, 2, 2).unwrap()).unwrap();
        assert_eq!((h2.r(), h2.n(), h2.order(), h2.max_row_weight()), (4, 4, 1, 2));
        let h1 = incidence_matrix(&td_to_packing(&t, 3, 1).unwrap()).unwrap();
        assert_eq!(h1.max_row_weight(), 1);
        assert!(!h1.satisfies_h1());
    }

    #[test]
    fn text_round_trips() {
        let t = td_linear(&gf(3)).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("td 3 3\n0 3 6\n"));
        assert_eq!(TransversalDesign::from_text(&text).unwrap(), t);
        let p = td_to_packing(&t, 2, 2).unwrap();
        let text = p.to_text();
        assert!(text.starts_with("packing 2 6 2 2\n"));
        assert_eq!(PackingDesign::from_text(&text).unwrap(), p);
        assert!(PackingDesign::from_text("packing 2 6 2 3\n0 3\n").is_err());
    }
}
