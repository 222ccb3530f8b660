//! Group names accepted by `abelianize --group`:
//! `z:<n>`, `sym:<k>`, `alt:<k>`, `dihedral:<order>`, `sl2f3`,
//! `gl:<n>:<q>`, `e:<n>:<q>`, `aff:<n>:<q>[:<copies>]`,
//! `power:<k>:<group>`, `wreath:<k>:<group>`.

use std::sync::Arc;

use mtk_core::constructions::{alternating_group, cyclic_group, dihedral_group, sl2_f3, symmetric_group, wreath};
use mtk_core::groups::FiniteGroup;
use mtk_core::linear::{affine_group, elementary_closure, gl_group, MatRing};

fn num(s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("expected a number, found `{s}`"))
}

fn field(q: &str) -> Result<Arc<MatRing>, String> {
    let q = num(q)?;
    let q = u32::try_from(q).map_err(|_| format!("field size {q} too large"))?;
    MatRing::finite_field(q).map(Arc::new).map_err(|e| e.to_string())
}

pub fn build(name: &str, cap: usize) -> Result<FiniteGroup, String> {
    let (head, rest) = name.split_once(':').unwrap_or((name, ""));
    let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    let g = match (head, args.as_slice()) {
        ("z", [n]) => cyclic_group(num(n)?),
        ("sym", [k]) => symmetric_group(num(k)?, cap),
        ("alt", [k]) => alternating_group(num(k)?, cap),
        ("dihedral", [o]) => dihedral_group(num(o)?),
        ("sl2f3", []) => Ok(sl2_f3()),
        ("gl", [n, q]) => gl_group(num(n)?, &field(q)?, cap),
        ("e", [n, q]) => elementary_closure(num(n)?, &field(q)?, cap),
        ("aff", [n, q]) => affine_group(num(n)?, &field(q)?, 1, cap),
        ("aff", [n, q, c]) => affine_group(num(n)?, &field(q)?, num(c)?, cap),
        ("power" | "wreath", [k, ..]) => {
            let k = num(k)?;
            let inner = rest.split_once(':').map(|(_, s)| s).unwrap_or("");
            let base = build(inner, cap)?;
            if head == "power" {
                FiniteGroup::direct_power(&base, k, cap)
            } else {
                symmetric_group(k, cap).and_then(|top| wreath(&base, k, &top, cap))
            }
        }
        _ => return Err(format!("unknown group `{name}`")),
    };
    g.map_err(|e| e.to_string())
}
