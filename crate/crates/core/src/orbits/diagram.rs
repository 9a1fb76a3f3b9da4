use serde::Serialize;

use super::Partition;

/// One box of a Young diagram, with 1-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    /// Boxes strictly to the right.
    pub arm: usize,
    /// Boxes strictly below.
    pub leg: usize,
    pub hook: usize,
}

/// Young diagram of an orbit, drawn with the Jordan blocks as columns: the
/// zero orbit is a single row and the regular orbit a single column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungDiagram {
    partition: Partition,
    cells: Vec<Cell>,
}

impl YoungDiagram {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<&Cell> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.partition.conjugate().parts().to_vec()
    }

    /// Column heights, left to right. These are the parts of the partition.
    pub fn column_heights(&self) -> Vec<usize> {
        self.partition.parts().to_vec()
    }

    /// Rows of `#` characters, one line per row.
    pub fn render(&self) -> String {
        self.row_lengths()
            .iter()
            .map(|&len| "#".repeat(len))
            .collect::<Vec<_>>()
            .join("/")
    }
}

pub fn young_stats(p: &Partition) -> YoungDiagram {
    let rows = p.conjugate();
    let mut cells = Vec::with_capacity(p.size());
    for (i, &row_len) in rows.parts().iter().enumerate() {
        for j in 0..row_len {
            let arm = row_len - j - 1;
            let leg = p.parts()[j] - i - 1;
            cells.push(Cell {
                row: i + 1,
                col: j + 1,
                arm,
                leg,
                hook: 1 + arm + leg,
            });
        }
    }
    YoungDiagram {
        partition: p.clone(),
        cells,
    }
}
