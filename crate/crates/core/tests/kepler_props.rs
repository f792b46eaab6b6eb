use std::collections::HashSet;

use num_bigint::BigUint;
use qseq::kepler::{children, level, right_edge, to_dot};
use qseq::sequence::eval_index;
use qseq::{Natural, PositiveRational};

fn fibonacci(count: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::from(0u32), BigUint::from(1u32)];
    while f.len() < count {
        let next = &f[f.len() - 1] + &f[f.len() - 2];
        f.push(next);
    }
    f
}

#[test]
fn levels_match_odd_indexed_terms() {
    let mut union = HashSet::new();
    for d in 0..=10u32 {
        let row = level(d);
        assert_eq!(row.len(), 1 << d);
        for (i, node) in row.iter().enumerate() {
            assert_eq!(node.depth, d);
            assert_eq!(
                node.index,
                Natural::from((1u64 << (d + 1)) + 1 + 2 * i as u64)
            );
            assert_eq!(eval_index(&node.index).unwrap(), node.value);
            assert!(node.value < PositiveRational::one());
            union.insert(node.value.clone());
        }
        let expected: HashSet<PositiveRational> = (1..(1u64 << (d + 1)))
            .map(|k| eval_index(&Natural::from(2 * k + 1)).unwrap())
            .collect();
        assert_eq!(union, expected, "depth {d}");
    }
}

#[test]
fn propagation_algebra() {
    for d in 0..10u32 {
        for node in level(d) {
            let a = &node.value;
            let (l, r) = children(&node);
            // left = 1/(1/a + 1), right = 1/(a + 1)
            assert_eq!(l.value, a.reciprocal().add_one().reciprocal());
            assert_eq!(r.value, a.add_one().reciprocal());
        }
    }
}

#[test]
fn right_edge_is_fibonacci_ratios() {
    let f = fibonacci(64);
    let edge = right_edge(59);
    for (j, v) in edge.iter().enumerate() {
        let n = j + 2;
        assert_eq!(v.numer(), &f[n]);
        assert_eq!(v.denom(), &f[n + 1]);
    }
}

#[test]
fn dot_has_every_index_through_63() {
    let dot = to_dot(4);
    let names: HashSet<u32> = dot
        .lines()
        .filter(|l| l.contains("[label="))
        .map(|l| {
            l.trim()
                .trim_start_matches('n')
                .split(' ')
                .next()
                .unwrap()
                .parse()
                .unwrap()
        })
        .collect();
    assert_eq!(names.len(), 31);
    assert_eq!(names, (3..=63).step_by(2).collect());
    assert_eq!(dot.matches("->").count(), 30);
}
