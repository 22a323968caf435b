#![allow(dead_code)]

use skewrsk::{Letter, Row, SkewTableau, TableauPair};

pub fn tab(n: u32, base: i64, rows: &[(usize, &[Letter])]) -> SkewTableau {
    SkewTableau::from_rows(n, base, rows).unwrap()
}

pub fn pair(p: SkewTableau, q: SkewTableau) -> TableauPair {
    TableauPair::new(p, q).unwrap()
}

/// Builds a tableau from labeled column segments `(column, top row, labels)`.
/// Unlabeled rows between labeled ones take the outer width of the next labeled row below.
pub fn from_columns(n: u32, cols: &[(usize, i64, &[Letter])]) -> SkewTableau {
    let mut cells = std::collections::BTreeMap::<i64, Vec<(usize, Letter)>>::new();
    for &(c, top, labels) in cols {
        for (k, &l) in labels.iter().enumerate() {
            cells.entry(top + k as i64).or_default().push((c, l));
        }
    }
    let lo = *cells.keys().next().unwrap();
    let hi = *cells.keys().last().unwrap();
    let mut rows = Vec::new();
    let mut below_outer = 0;
    for r in (lo..=hi).rev() {
        match cells.get_mut(&r) {
            Some(v) => {
                v.sort();
                let inner = v[0].0 - 1;
                below_outer = inner + v.len();
                rows.push(Row::new(inner, v.iter().map(|x| x.1).collect()));
            }
            None => rows.push(Row::new(below_outer, Vec::new())),
        }
    }
    rows.reverse();
    SkewTableau::new(n, lo, rows).unwrap()
}

/// The running example pair over five letters.
pub fn intro_pair() -> TableauPair {
    pair(
        tab(5, 1, &[(3, &[1]), (1, &[2, 3, 4]), (0, &[1, 3, 5]), (0, &[2])]),
        tab(5, 1, &[(3, &[2]), (1, &[1, 3, 3]), (0, &[2, 2, 5]), (0, &[3])]),
    )
}
