//! Graphviz export of a single component.

use std::fmt::Write as _;
use std::fs;
use std::hash::Hasher;
use std::path::{Path, PathBuf};

use super::{WeightComponent, WeightKey};

/// 64-bit FNV-1a over the little-endian coordinate bytes.
struct Fnv1a(u64);

impl Hasher for Fnv1a {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

pub fn key_hash(weight: &WeightKey) -> u64 {
    let mut h = Fnv1a(0xcbf2_9ce4_8422_2325);
    for c in weight.vector().coords() {
        h.write(&c.to_le_bytes());
    }
    h.finish()
}

pub fn file_name(weight: &WeightKey) -> String {
    format!("weight_{:016x}.dot", key_hash(weight))
}

pub fn to_dot(component: &WeightComponent) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", component.weight).unwrap();
    writeln!(
        out,
        "  label=\"weight {} rank {}\";",
        component.weight, component.rank
    )
    .unwrap();
    for (i, v) in component.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"0x{:x}\\n|{}|\"];", v.bits, v.degree()).unwrap();
    }
    for e in &component.edges {
        let label = if e.sign > 0 { "+" } else { "-" };
        writeln!(out, "  v{} -- v{} [label=\"{label}\"];", e.upper, e.lower).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Writes `component` into `dir`, returning the path.
pub fn write_dot(dir: &Path, component: &WeightComponent) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(file_name(&component.weight));
    fs::write(&path, to_dot(component))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis_graph::decompose;
    use crate::root_system::{build_root_system, DynkinType};

    #[test]
    fn a2_pair_component_renders() {
        let sys = build_root_system(DynkinType::A, 2).unwrap();
        let d = decompose(&sys).unwrap();
        let c = d.components.iter().find(|c| c.len() == 2).unwrap();
        let dot = to_dot(c);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("|1|") && dot.contains("|2|"));
        let names: std::collections::HashSet<_> =
            d.components.iter().map(|c| file_name(&c.weight)).collect();
        assert_eq!(names.len(), d.components.len());
    }
}
