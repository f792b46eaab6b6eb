//! Kepler's tree of the rationals strictly between 0 and 1.
//!
//! The root is `a(3) = 1/2` and a node `x/y` at index `2n+1` has children
//! `x/(x+y)` at `4n+1` and `y/(x+y)` at `4n+3`. Read level by level, the tree
//! lists `a(3), a(5), a(7), ...`.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::rational::{Natural, PositiveRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeplerNode {
    pub index: Natural,
    pub value: PositiveRational,
    /// 0 at the root.
    pub depth: u32,
}

pub fn root() -> KeplerNode {
    KeplerNode {
        index: Natural::from(3u32),
        value: PositiveRational::new(1u32.into(), 2u32.into()).expect("1/2"),
        depth: 0,
    }
}

/// `(left, right)`; left always carries the smaller index.
pub fn children(node: &KeplerNode) -> (KeplerNode, KeplerNode) {
    let (x, y) = (node.value.numer(), node.value.denom());
    let sum = x + y;
    // 2n+1 -> 4n+1 and 4n+3, i.e. 2*index - 1 and 2*index + 1.
    let doubled = &node.index << 1u32;
    let left = KeplerNode {
        index: &doubled - 1u32,
        value: PositiveRational::new(x.clone(), sum.clone()).expect("positive"),
        depth: node.depth + 1,
    };
    let right = KeplerNode {
        index: doubled + 1u32,
        value: PositiveRational::new(y.clone(), sum).expect("positive"),
        depth: node.depth + 1,
    };
    (left, right)
}

/// The `2^d` nodes at depth `d`, left to right.
pub fn level(d: u32) -> Vec<KeplerNode> {
    let mut row = vec![root()];
    for _ in 0..d {
        row = row
            .iter()
            .flat_map(|node| {
                let (l, r) = children(node);
                [l, r]
            })
            .collect();
    }
    row
}

/// `a(3), a(7), a(15), ...`: the first `count` nodes down the right-hand edge.
pub fn right_edge(count: usize) -> Vec<PositiveRational> {
    let mut node = root();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 {
            node = children(&node).1;
        }
        out.push(node.value.clone());
    }
    out
}

/// All nodes down to `max_depth`, in pre-order (parent, left subtree, right subtree).
pub fn preorder(max_depth: u32) -> Vec<KeplerNode> {
    let mut out = Vec::new();
    let mut stack = vec![root()];
    while let Some(node) = stack.pop() {
        if node.depth < max_depth {
            let (l, r) = children(&node);
            stack.push(r);
            stack.push(l);
        }
        out.push(node);
    }
    out
}

fn label(node: &KeplerNode) -> String {
    format!("a_{} = {}", node.index, node.value)
}

/// Graphviz text: nodes named `n<index>`, labelled `a_<index> = p/q`.
pub fn to_dot(max_depth: u32) -> String {
    let mut out = String::from("digraph kepler {\n");
    let mut edges = String::new();
    for d in 0..=max_depth {
        for node in level(d) {
            writeln!(out, "  n{} [label=\"{}\"];", node.index, label(&node)).unwrap();
            if d < max_depth {
                let (l, r) = children(&node);
                writeln!(edges, "  n{} -> n{};", node.index, l.index).unwrap();
                writeln!(edges, "  n{} -> n{};", node.index, r.index).unwrap();
            }
        }
    }
    out.push_str(&edges);
    out.push_str("}\n");
    out
}

fn json_node(node: &KeplerNode, max_depth: u32) -> Value {
    let children = if node.depth < max_depth {
        let (l, r) = children(node);
        vec![json_node(&l, max_depth), json_node(&r, max_depth)]
    } else {
        Vec::new()
    };
    // Trees deep enough to overflow u64 indices cannot be materialised anyway.
    let index = node
        .index
        .to_u64()
        .map_or_else(|| json!(node.index.to_string()), |i| json!(i));
    json!({
        "index": index,
        "value": node.value.to_string(),
        "children": children,
    })
}

/// Nested JSON objects with fields `index`, `value` and `children`.
pub fn to_json(max_depth: u32) -> Value {
    json_node(&root(), max_depth)
}

/// Indented text tree, two spaces per level, in pre-order.
pub fn to_text(max_depth: u32) -> String {
    let mut out = String::new();
    for node in preorder(max_depth) {
        writeln!(out, "{}{}", "  ".repeat(node.depth as usize), label(&node)).unwrap();
    }
    out
}
