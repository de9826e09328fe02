use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Main,
    Coeff { block: usize, slot: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarEntry {
    pub name: String,
    pub kind: VarKind,
}

/// Two-sorted variable table: main variables occupy indices `0..n`, coefficient
/// variables follow block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    entries: Vec<VarEntry>,
    n_main: usize,
    blocks: Vec<Vec<usize>>,
    by_name: HashMap<String, usize>,
}

/// Canonical coefficient name: `u{i}{k}` when both indices are single digits, `u{i}_{k}` otherwise.
pub fn coeff_name(block: usize, slot: usize) -> String {
    if block < 10 && slot < 10 {
        format!("u{block}{slot}")
    } else {
        format!("u{block}_{slot}")
    }
}

/// Inverse of [`coeff_name`].
pub fn parse_coeff_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('u')?;
    if let Some((a, b)) = rest.split_once('_') {
        if a.is_empty() || b.is_empty() || !a.bytes().all(|c| c.is_ascii_digit()) || !b.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        return Some((a.parse().ok()?, b.parse().ok()?));
    }
    let bytes = rest.as_bytes();
    if bytes.len() == 2 && bytes.iter().all(|c| c.is_ascii_digit()) {
        return Some(((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize));
    }
    None
}

impl VarTable {
    /// Builds a table with the given main variables and one coefficient block of size
    /// `block_sizes[i]` per polynomial.
    pub fn new(main: &[String], block_sizes: &[usize]) -> Result<Self> {
        if main.is_empty() {
            return Err(Error::Malformed("at least one main variable is required".into()));
        }
        let mut entries = Vec::new();
        let mut by_name = HashMap::new();
        for name in main {
            if parse_coeff_name(name).is_some() {
                return Err(Error::Malformed(format!("main variable name {name} collides with coefficient naming")));
            }
            if by_name.insert(name.clone(), entries.len()).is_some() {
                return Err(Error::Malformed(format!("duplicate variable name {name}")));
            }
            entries.push(VarEntry { name: name.clone(), kind: VarKind::Main });
        }
        let mut blocks = Vec::with_capacity(block_sizes.len());
        for (block, &len) in block_sizes.iter().enumerate() {
            let mut slots = Vec::with_capacity(len);
            for slot in 0..len {
                let name = coeff_name(block, slot);
                by_name.insert(name.clone(), entries.len());
                slots.push(entries.len());
                entries.push(VarEntry { name, kind: VarKind::Coeff { block, slot } });
            }
            blocks.push(slots);
        }
        Ok(VarTable { entries, n_main: main.len(), blocks, by_name })
    }

    pub fn n(&self) -> usize {
        self.n_main
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, idx: usize) -> &VarEntry {
        &self.entries[idx]
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.entries[idx].name
    }

    pub fn kind(&self, idx: usize) -> VarKind {
        self.entries[idx].kind
    }

    pub fn is_main(&self, idx: usize) -> bool {
        idx < self.n_main
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn main_names(&self) -> Vec<String> {
        self.entries[..self.n_main].iter().map(|e| e.name.clone()).collect()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Variable indices of block `i`, ordered by slot.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn coeff(&self, block: usize, slot: usize) -> usize {
        self.blocks[block][slot]
    }
}

/// The `shift`-th transform of variable `var`; ordering is the canonical key order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftedVar {
    pub var: u32,
    pub shift: u32,
}

impl ShiftedVar {
    pub fn new(var: usize, shift: u32) -> Self {
        ShiftedVar { var: var as u32, shift }
    }

    pub fn var(self) -> usize {
        self.var as usize
    }

    pub fn shifted(self, k: u32) -> Self {
        ShiftedVar { var: self.var, shift: self.shift + k }
    }

    pub fn display<'a>(&self, vars: &'a VarTable) -> ShiftedVarDisplay<'a> {
        ShiftedVarDisplay { sv: *self, vars }
    }
}

pub struct ShiftedVarDisplay<'a> {
    sv: ShiftedVar,
    vars: &'a VarTable,
}

impl fmt::Display for ShiftedVarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.name(self.sv.var()))?;
        if self.sv.shift > 0 {
            write!(f, "@{}", self.sv.shift)?;
        }
        Ok(())
    }
}
