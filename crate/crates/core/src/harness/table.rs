//! CSV layout shared by the harness commands.

use std::io::Write;

use crate::equilibria::{EquilibriumOutcome, Scenario};
use crate::error::Result;
use crate::model::PriceName;

/// Decimal rendering with 12 significant digits and no trailing zeros.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&magnitude) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Column layout of a scenario's outcome rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    TwoPlayer,
    Duopoly,
    Multiclass,
}

impl Layout {
    pub fn of(scenario: Scenario) -> Layout {
        if scenario.is_duopoly() {
            Layout::Duopoly
        } else if scenario.is_multiclass() {
            Layout::Multiclass
        } else {
            Layout::TwoPlayer
        }
    }

    fn prices(&self) -> &'static [PriceName] {
        match self {
            Layout::TwoPlayer => &[PriceName::P1, PriceName::P2],
            Layout::Duopoly => &[PriceName::P1, PriceName::P2, PriceName::P3],
            Layout::Multiclass => &[PriceName::Pl, PriceName::Ph, PriceName::P2],
        }
    }

    fn players(&self) -> usize {
        if *self == Layout::Duopoly {
            3
        } else {
            2
        }
    }

    /// Header after the leading `x` column.
    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = self.prices().iter().map(|p| p.as_str().to_string()).collect();
        cols.push("demand".into());
        if *self == Layout::Multiclass {
            cols.extend(["dl".into(), "dh".into()]);
        }
        cols.extend((1..=self.players()).map(|i| format!("u{i}")));
        cols.extend(["regime".into(), "stability".into()]);
        cols
    }

    /// Cells for an outcome, or an `Invalid` row with empty numbers.
    pub fn cells(&self, outcome: Option<&EquilibriumOutcome>) -> Vec<String> {
        let width = self.columns().len();
        let Some(o) = outcome else {
            let mut row = vec![String::new(); width - 2];
            row.extend(["Invalid".into(), String::new()]);
            return row;
        };
        let mut row: Vec<String> =
            self.prices().iter().map(|&p| o.prices.get(p).map(format_number).unwrap_or_default()).collect();
        row.push(format_number(o.demand));
        if *self == Layout::Multiclass {
            let split = o.class_split.as_ref();
            row.push(split.map(|s| format_number(s.low)).unwrap_or_default());
            row.push(split.map(|s| format_number(s.high)).unwrap_or_default());
        }
        row.extend(o.utilities.iter().map(|&u| format_number(u)));
        row.push(o.regime.to_string());
        row.push(o.stability.to_string());
        row
    }
}

/// Writes the `#` metadata line, the header and the rows.
pub fn write_csv<W: Write>(mut out: W, metadata: &str, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    writeln!(out, "# {metadata}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(1.0 / 9.0), "0.111111111111");
        assert_eq!(format_number(0.25), "0.25");
        assert_eq!(format_number(-0.037), "-0.037");
        assert_eq!(format_number(123.456), "123.456");
        assert_eq!(format_number(2.0 / 3.0 * 1e-8), "6.66666666667e-9");
        assert_eq!(format_number(-1e-20 * 0.0), "0");
    }

    #[test]
    fn layouts() {
        assert_eq!(Layout::of(Scenario::BasicCompetition).columns().join(","), "p1,p2,demand,u1,u2,regime,stability");
        assert_eq!(Layout::of(Scenario::Duopoly).columns().join(","), "p1,p2,p3,demand,u1,u2,u3,regime,stability");
        assert_eq!(
            Layout::of(Scenario::MulticlassLine).columns().join(","),
            "pl,ph,p2,demand,dl,dh,u1,u2,regime,stability"
        );
        assert_eq!(Layout::TwoPlayer.cells(None), vec!["", "", "", "", "", "Invalid", ""]);
    }
}
