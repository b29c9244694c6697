use crate::error::{Error, Result};

/// A dense boolean matrix, parsed from and rendered as a text grid of 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BoolMatrix {
    pub fn new(rows: usize, cols: usize) -> BoolMatrix {
        BoolMatrix {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<BoolMatrix> {
        let Some(first) = rows.first() else {
            return Err(Error::Invalid("matrix needs at least one row".into()));
        };
        let cols = first.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(BoolMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row_ones(&self, row: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.get(row, c)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// The matrix with rows and columns rearranged; `row_order[k]` is the
    /// original index of the row placed at position `k`, likewise for columns.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> BoolMatrix {
        debug_assert_eq!(row_order.len(), self.rows);
        debug_assert_eq!(col_order.len(), self.cols);
        let mut out = BoolMatrix::new(self.rows, self.cols);
        for (i, &r) in row_order.iter().enumerate() {
            for (j, &c) in col_order.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn transposed(&self) -> BoolMatrix {
        let mut out = BoolMatrix::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<BoolMatrix> {
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(Error::Parse {
                        line: i + 1,
                        msg: format!("bad matrix cell `{other}`"),
                    }),
                })
                .collect::<Result<Vec<bool>>>()?;
            rows.push(row);
        }
        BoolMatrix::from_rows(rows)
    }

    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_roundtrip() {
        let m = BoolMatrix::parse("10 1\n011\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.render(), "101\n011\n");
        assert!(BoolMatrix::parse("10\n1\n").is_err());
        assert!(BoolMatrix::parse("1x\n").is_err());
    }

    #[test]
    fn permute_and_transpose() {
        let m = BoolMatrix::parse("10\n01\n").unwrap();
        let p = m.permuted(&[1, 0], &[0, 1]);
        assert_eq!(p.render(), "01\n10\n");
        assert_eq!(m.transposed().render(), m.render());
        assert_eq!(m.row_ones(0), vec![0]);
    }
}
