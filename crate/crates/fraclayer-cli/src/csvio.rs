//! CSV emission: 17-significant-digit floats, header line, LF endings,
//! locale-independent. Identical inputs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

/// 17 significant digits; round-trips through f64 parsing exactly.
pub fn fmt(x: f64) -> String {
    format!("{:.16e}", x)
}

pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_floats(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|&v| fmt(v)).collect());
    }

    pub fn push_raw(&mut self, values: Vec<String>) {
        self.rows.push(values);
    }

    pub fn to_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut f = fs::File::create(path)?;
        f.write_all(self.to_string().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for &x in &[1.0, -0.1, 2.718281828459045, 5.6418958354775629e-3, 1e-300] {
            let s = fmt(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }

    #[test]
    fn lf_endings_and_header() {
        let mut t = CsvTable::new(&["x", "u"]);
        t.push_floats(&[0.0, 1.0]);
        let s = t.to_string();
        assert!(s.starts_with("x,u\n"));
        assert!(!s.contains('\r'));
        assert!(s.ends_with('\n'));
    }
}
