//! Precomputed placements of forbidden shapes inside a finite domain.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::index::Shape;
use crate::grid::{Element, Group};

/// A finite domain with a fixed assignment order, and every placement of
/// every known shape inside it. A placement is checked as soon as its last
/// cell (in assignment order) receives a letter.
#[derive(Debug)]
pub struct DomainPlan {
    cells: Vec<Element>,
    fixed: usize,
    shape_count: usize,
    placement_shape: Vec<u32>,
    placement_cells: Vec<u32>,
    placement_offsets: Vec<u32>,
    root: Vec<u32>,
    triggers: Vec<Vec<u32>>,
}

impl DomainPlan {
    /// `fixed` cells come first (in the given order), then `free` cells that
    /// are not already fixed.
    pub fn new(group: &Group, fixed: &[Element], free: &[Element], shapes: &[Shape]) -> Self {
        let mut cells: Vec<Element> = fixed.to_vec();
        let fixed_len = cells.len();
        let mut seen: BTreeMap<Element, usize> = BTreeMap::new();
        for (i, g) in cells.iter().enumerate() {
            seen.insert(g.clone(), i);
        }
        for g in free {
            if !seen.contains_key(g) {
                seen.insert(g.clone(), cells.len());
                cells.push(g.clone());
            }
        }
        let mut plan = DomainPlan {
            triggers: vec![Vec::new(); cells.len()],
            cells,
            fixed: fixed_len,
            shape_count: shapes.len(),
            placement_shape: Vec::new(),
            placement_cells: Vec::new(),
            placement_offsets: vec![0],
            root: Vec::new(),
        };
        if *group == Group::Integers {
            plan.place_integers(shapes);
        } else {
            plan.place_generic(group, shapes, &seen);
        }
        plan
    }

    fn push_placement(&mut self, shape: usize, idx: &[u32]) {
        let id = self.placement_shape.len() as u32;
        self.placement_shape.push(shape as u32);
        self.placement_cells.extend_from_slice(idx);
        self.placement_offsets.push(self.placement_cells.len() as u32);
        let last = *idx.iter().max().expect("non-empty shape") as usize;
        if last < self.fixed {
            self.root.push(id);
        } else {
            self.triggers[last].push(id);
        }
    }

    fn place_integers(&mut self, shapes: &[Shape]) {
        let pos: Vec<i64> = self.cells.iter().map(Element::position).collect();
        let (Some(&lo), Some(&hi)) = (pos.iter().min(), pos.iter().max()) else {
            return;
        };
        let mut at = vec![u32::MAX; (hi - lo + 1) as usize];
        for (i, &p) in pos.iter().enumerate() {
            at[(p - lo) as usize] = i as u32;
        }
        let mut idx = Vec::new();
        for (sid, shape) in shapes.iter().enumerate() {
            let offs: Vec<i64> = shape.iter().map(Element::position).collect();
            for &g in &pos {
                idx.clear();
                for &o in &offs {
                    let x = g + o;
                    if x < lo || x > hi || at[(x - lo) as usize] == u32::MAX {
                        break;
                    }
                    idx.push(at[(x - lo) as usize]);
                }
                if idx.len() == offs.len() {
                    let copy = idx.clone();
                    self.push_placement(sid, &copy);
                }
            }
        }
    }

    fn place_generic(&mut self, group: &Group, shapes: &[Shape], seen: &BTreeMap<Element, usize>) {
        let anchors = self.cells.clone();
        let mut idx = Vec::new();
        for (sid, shape) in shapes.iter().enumerate() {
            for g in &anchors {
                idx.clear();
                for y in shape {
                    match seen.get(&group.mul(g, y)) {
                        Some(&i) => idx.push(i as u32),
                        None => break,
                    }
                }
                if idx.len() == shape.len() {
                    let copy = idx.clone();
                    self.push_placement(sid, &copy);
                }
            }
        }
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn fixed(&self) -> usize {
        self.fixed
    }

    /// Number of index shapes the plan was built against.
    pub fn shape_count(&self) -> usize {
        self.shape_count
    }

    pub fn placement_count(&self) -> usize {
        self.placement_shape.len()
    }

    pub(crate) fn root(&self) -> &[u32] {
        &self.root
    }

    pub(crate) fn triggers(&self, cell: usize) -> &[u32] {
        &self.triggers[cell]
    }

    pub(crate) fn placement(&self, id: u32) -> (usize, &[u32]) {
        let id = id as usize;
        let a = self.placement_offsets[id] as usize;
        let b = self.placement_offsets[id + 1] as usize;
        (self.placement_shape[id] as usize, &self.placement_cells[a..b])
    }
}
