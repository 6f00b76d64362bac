//! CSV table assembly and emission.
//!
//! Numbers carry 12 significant digits; flagged points render as the
//! literal token NAN with the flag named in a dedicated column; and the
//! file ends with a `# config:` comment recording the effective parameters.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 12 significant digits; non-finite values render as the NAN token.
pub fn format_value(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "NAN".to_string()
    }
}

fn render_cell(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format_value(*x),
        Cell::Text(t) => t.clone(),
        Cell::Empty => String::new(),
    }
}

pub fn render_csv(table: &Table, params: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(render_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    let config: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out.push_str(&format!("# config: {}\n", config.join(" ")));
    out
}

pub fn write_csv(
    table: &Table,
    params: &BTreeMap<String, String>,
    path: &Path,
) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(render_csv(table, params).as_bytes())
}
