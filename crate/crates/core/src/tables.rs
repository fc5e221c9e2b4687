//! Lowest-parameter tables: for each unit-vector count, the smallest
//! admissible family parameter that attains it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::{is_degenerate, FamilyTag};
use crate::repcount::{CountSieve, Form};

/// Serialized as the integer 1, 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum TableId {
    /// `L(k)`, units `12 + u(k)`
    One,
    /// `M(k)`, units `8 + v(k)`
    Two,
    /// `M(k)/2` keyed by odd `2k`, units `8 + v(2k)`
    Three,
}

impl From<TableId> for u8 {
    fn from(id: TableId) -> u8 {
        id.number()
    }
}

impl TryFrom<u8> for TableId {
    type Error = String;
    fn try_from(n: u8) -> Result<Self, Self::Error> {
        n.to_string().parse()
    }
}

impl TableId {
    pub fn number(&self) -> u8 {
        match self {
            TableId::One => 1,
            TableId::Two => 2,
            TableId::Three => 3,
        }
    }

    /// The family this table ranges over (parameter is a placeholder).
    pub fn family(&self) -> FamilyTag {
        match self {
            TableId::One => FamilyTag::L(1),
            TableId::Two => FamilyTag::M(1),
            TableId::Three => FamilyTag::MHalf(1),
        }
    }

    pub fn key_label(&self) -> &'static str {
        match self {
            TableId::Three => "2k",
            _ => "k",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for TableId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(TableId::One),
            "2" => Ok(TableId::Two),
            "3" => Ok(TableId::Three),
            _ => Err(format!("unknown table {s:?}; expected 1, 2 or 3")),
        }
    }
}

/// Whether parameter `p` of `family` may appear in a table:
/// degenerate parameters never do, `M(1)` is the exceptional lattice with
/// the larger unit group, and `M(k)/2` takes odd `2k` only.
pub fn admissible(family: FamilyTag, p: u64) -> bool {
    let tag = family.with_param(p);
    match tag {
        FamilyTag::L(_) => !is_degenerate(tag),
        FamilyTag::M(k) => k != 1,
        FamilyTag::MHalf(n) => n % 2 == 1 && !is_degenerate(tag),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Found,
    /// No admissible parameter up to the sieve limit.
    BeyondLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub units: u64,
    pub param: Option<u64>,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub id: TableId,
    pub key: String,
    pub limit: u64,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn lookup(&self, units: u64) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.units == units)
    }

    /// `(units, param)` for every found row.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.rows.iter().filter_map(|r| Some((r.units, r.param?))).collect()
    }
}

/// Rows for every attainable unit count from the first non-trivial one
/// up to `max_units`.
pub fn build_table(id: TableId, max_units: u64, limit: u64) -> Table {
    let family = id.family();
    let form = family.form();
    let base = family.trivial_count();
    let step = form.unit_count();
    let firsts = CountSieve::new(form, limit).first_occurrences(&|p| !admissible(family, p));
    let rows = (1..)
        .map(|m| base + m * step)
        .take_while(|&units| units <= max_units)
        .map(|units| match firsts.get(&(units - base)) {
            Some(&p) => TableRow { units, param: Some(p), status: RowStatus::Found },
            None => TableRow { units, param: None, status: RowStatus::BeyondLimit },
        })
        .collect();
    Table { id, key: id.key_label().to_string(), limit, rows }
}

/// Smallest admissible parameter of `family` whose lattice has exactly
/// `units` unit vectors.
pub fn lowest_param(family: FamilyTag, units: u64, limit: u64) -> Option<u64> {
    let base = family.trivial_count();
    let form: Form = family.form();
    let count = units.checked_sub(base)?;
    if count % form.unit_count() != 0 {
        return None;
    }
    CountSieve::new(form, limit).lowest(count, &|p| !admissible(family, p))
}
