//! Built-in Cartan data with minimal symmetrizers, plus integer lifts of a
//! few non-rigid modules used as golden inputs.

use crate::cartan::{CartanDatum, CartanError};
use crate::grassmann::IntegerLift;
use std::collections::BTreeMap;

pub const TYPE_NAMES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];

/// Datum for a built-in type name. Orientations follow the convention that
/// arrows point from higher to lower vertex (pair (i, i+1): arrow i+1 -> i).
pub fn datum(name: &str) -> Result<CartanDatum, CartanError> {
    match name {
        "A1" => CartanDatum::new(&[vec![2]], &[1], &[]),
        "A2" => CartanDatum::new(&[vec![2, -1], vec![-1, 2]], &[1, 1], &[(0, 1)]),
        "A3" => CartanDatum::new(
            &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            &[1, 1, 1],
            &[(0, 1), (1, 2)],
        ),
        "B2" => CartanDatum::new(&[vec![2, -1], vec![-2, 2]], &[2, 1], &[(0, 1)]),
        "B3" => CartanDatum::new(
            &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            &[2, 2, 1],
            &[(0, 1), (1, 2)],
        ),
        "C3" => CartanDatum::new(
            &[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            &[1, 1, 2],
            &[(0, 1), (1, 2)],
        ),
        "G2" => CartanDatum::new(&[vec![2, -3], vec![-1, 2]], &[1, 3], &[(0, 1)]),
        other => Err(CartanError::NotCartan(format!(
            "unknown builtin type '{}'",
            other
        ))),
    }
}

/// The non-rigid indecomposable locally free module of rank (1, 1) in type B2:
/// the arrow generator maps into the radical of the vertex-1 space.
pub fn b2_nonrigid_rank11() -> IntegerLift {
    let mut arrows = BTreeMap::new();
    // Basis of vertex 1: (u, eps*u); arrow image eps*u.
    arrows.insert((0, 1), vec![vec![0], vec![1]]);
    IntegerLift {
        rank: vec![1, 1],
        arrows,
    }
}

/// First non-rigid indecomposable locally free module of rank (3, 2) in type
/// G2. Vertex 2 basis (g, eg, e2g, g', eg', e2g'), vertex 1 basis (w1, w2, w3);
/// the arrow sends g -> w1, eg' -> w2, e2g -> w3, e2g' -> w3.
pub fn g2_nonrigid_m1() -> IntegerLift {
    let mut arrows = BTreeMap::new();
    arrows.insert(
        (0, 1),
        vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 1],
        ],
    );
    IntegerLift {
        rank: vec![3, 2],
        arrows,
    }
}

/// Second non-rigid indecomposable locally free module of rank (3, 2) in type
/// G2. Same bases as `g2_nonrigid_m1`; the arrow sends g -> w1, eg -> w2,
/// e2g -> w3, eg' -> w3.
pub fn g2_nonrigid_m2() -> IntegerLift {
    let mut arrows = BTreeMap::new();
    arrows.insert(
        (0, 1),
        vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 1, 0],
        ],
    );
    IntegerLift {
        rank: vec![3, 2],
        arrows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_validate() {
        for name in TYPE_NAMES {
            datum(name).unwrap();
        }
    }

    #[test]
    fn g2_symmetrizer_minimal() {
        let d = datum("G2").unwrap();
        assert_eq!(d.symmetrizer(), &[1, 3]);
    }
}
