//! Fixed example objects used by the demo pipeline and the tests.

use crate::seidel::{Digraph, SeidelMatrix, SimpleGraph};

/// Star graph on six vertices: edges {1,3}, {1,5}, {2,5}, {2,6}, {3,6}
/// (1-based labels).
pub fn star_graph() -> SimpleGraph {
    SimpleGraph::new(6, [(0, 2), (0, 4), (1, 4), (1, 5), (2, 5)]).expect("valid edge list")
}

/// Closed walks whose consecutive steps are the 24 arcs of the 8-vertex
/// directed strongly regular graph (1-based labels).
const DSRG8_WALKS: [&[usize]; 3] =
    [&[1, 3, 2, 6, 1, 4, 2, 7, 1, 5, 2, 8, 1], &[3, 4, 5, 3, 7, 4, 6, 5, 8, 3], &[6, 8, 7, 6]];

/// The 8-vertex directed strongly regular graph with in- and out-degree 3.
pub fn dsrg8() -> Digraph {
    let arcs = DSRG8_WALKS.iter().flat_map(|w| w.windows(2).map(|p| (p[0] - 1, p[1] - 1))).collect::<Vec<_>>();
    Digraph::new(8, arcs).expect("arc list has no repeats")
}

/// Exponent table of the 9×9 cube-root Seidel matrix of a (9,6)
/// equiangular tight frame; `.` marks the diagonal.
const ETF96_ROWS: [&str; 9] = [
    ". 0 0 0 0 0 0 0 0",
    "0 . 0 1 1 1 2 2 2",
    "0 0 . 2 2 2 1 1 1",
    "0 2 1 . 1 2 0 1 2",
    "0 2 1 2 . 1 1 2 0",
    "0 2 1 1 2 . 2 0 1",
    "0 1 2 0 2 1 . 2 1",
    "0 1 2 2 1 0 1 . 2",
    "0 1 2 1 0 2 2 1 .",
];

/// Full exponent table (diagonal as `None`) of the (9,6) matrix.
pub fn etf96_exponents() -> Vec<Vec<Option<u32>>> {
    ETF96_ROWS.iter().map(|r| r.split(' ').map(|e| e.parse().ok()).collect()).collect()
}

/// The (9,6) cube-root Seidel matrix, in standard form.
pub fn etf96_matrix() -> SeidelMatrix {
    let rows = etf96_exponents();
    SeidelMatrix::from_fn(3, 9, |i, j| rows[i][j].expect("off-diagonal entry")).unwrap()
}

/// Published class listing for the triples of [`etf96_matrix`] (1-based),
/// as `(class exponent, triples)`. Only the triples through vertex 1 agree
/// with the cycle products of the matrix; see the tests for the comparison.
pub const ETF96_LISTED_CLASSES: [(u32, &[[usize; 3]]); 3] = [
    (
        1,
        &[
            [1, 2, 4],
            [1, 2, 5],
            [1, 2, 6],
            [1, 3, 7],
            [1, 3, 8],
            [1, 3, 9],
            [1, 4, 5],
            [1, 4, 8],
            [1, 5, 6],
            [1, 5, 7],
            [1, 6, 9],
            [1, 7, 9],
            [2, 3, 4],
            [2, 3, 5],
            [2, 3, 6],
            [2, 7, 8],
            [2, 7, 9],
            [2, 8, 9],
            [3, 4, 5],
            [3, 4, 7],
            [3, 5, 7],
            [3, 6, 7],
            [3, 7, 8],
            [4, 7, 8],
            [4, 7, 9],
            [6, 7, 8],
        ],
    ),
    (
        2,
        &[
            [1, 2, 7],
            [1, 2, 8],
            [1, 2, 9],
            [1, 3, 4],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 6],
            [1, 4, 9],
            [1, 5, 8],
            [1, 6, 7],
            [1, 7, 8],
            [1, 8, 9],
            [2, 3, 7],
            [2, 3, 8],
            [2, 3, 9],
            [2, 4, 5],
            [2, 4, 6],
            [2, 5, 6],
            [3, 4, 6],
            [3, 4, 8],
            [3, 5, 6],
            [3, 5, 8],
            [3, 6, 8],
            [3, 7, 9],
            [3, 8, 9],
            [4, 5, 7],
            [4, 5, 8],
            [4, 5, 9],
            [4, 8, 9],
            [5, 6, 7],
            [5, 6, 8],
            [5, 6, 9],
            [5, 7, 8],
            [5, 7, 9],
            [6, 7, 9],
        ],
    ),
    (
        0,
        &[
            [1, 2, 3],
            [1, 4, 7],
            [1, 5, 9],
            [1, 6, 8],
            [2, 4, 7],
            [2, 4, 8],
            [2, 4, 9],
            [2, 5, 7],
            [2, 5, 8],
            [2, 5, 9],
            [2, 6, 7],
            [2, 6, 8],
            [2, 6, 9],
            [3, 4, 9],
            [3, 5, 9],
            [3, 6, 9],
            [4, 5, 6],
            [4, 6, 7],
            [4, 6, 8],
            [4, 6, 9],
            [5, 8, 9],
            [6, 8, 9],
            [7, 8, 9],
        ],
    ),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twograph::TwoGraphData;

    #[test]
    fn dsrg8_degrees_and_missing_pairs() {
        let g = dsrg8();
        assert_eq!(g.arcs().len(), 24);
        for v in 0..8 {
            assert_eq!(g.arcs().iter().filter(|a| a.0 == v).count(), 3);
            assert_eq!(g.arcs().iter().filter(|a| a.1 == v).count(), 3);
        }
        let missing: Vec<_> = (0..8)
            .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.arcs().contains(&(i, j)) && !g.arcs().contains(&(j, i)))
            .collect();
        assert_eq!(missing, vec![(0, 1), (2, 5), (3, 7), (4, 6)]);
        assert!(g.arcs().iter().all(|&(a, b)| !g.arcs().contains(&(b, a))));
    }

    #[test]
    fn etf96_table_is_hermitian_and_standard() {
        let rows = etf96_exponents();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row[i], None);
            for (j, e) in row.iter().enumerate() {
                if i != j {
                    assert_eq!((e.unwrap() + rows[j][i].unwrap()) % 3, 0);
                }
            }
        }
        assert!(etf96_matrix().is_standard_form());
    }

    #[test]
    fn listed_classes_partition_all_triples() {
        let mut all: Vec<[usize; 3]> = ETF96_LISTED_CLASSES.iter().flat_map(|(_, t)| t.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 84);
    }

    #[test]
    fn listed_classes_match_cycle_products_through_vertex_one() {
        let t = TwoGraphData::from_seidel(&etf96_matrix());
        let mut through_one = 0;
        let mut elsewhere_mismatch = 0;
        for (c, list) in ETF96_LISTED_CLASSES {
            for &[a, b, d] in list {
                let actual = t.class(a - 1, b - 1, d - 1);
                if a == 1 {
                    through_one += 1;
                    assert_eq!(actual, c, "{:?}", [a, b, d]);
                } else if actual != c {
                    elsewhere_mismatch += 1;
                }
            }
        }
        assert_eq!(through_one, 28);
        // The remaining 56 listed triples are not the cycle-product classes
        // of the matrix; 27 of them disagree.
        assert_eq!(elsewhere_mismatch, 27);
    }
}
