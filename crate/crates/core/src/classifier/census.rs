//! Classification of every small poset, cross-checked against the
//! forbidden-subposet characterizations.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use super::{ab_characterization, classify_sequential, contains_pattern, is_interval_order, is_unit_interval_order, ClassProfile, ClassifierError};
use crate::forcing::{trichotomy, Trichotomy};
use crate::poset::{canonical_form, enumerate_posets, Poset};
use crate::recognizer::RecognizeOptions;
use crate::representation::TypeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusFilter {
    pub twin_free_only: bool,
    pub inseparable_only: bool,
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub id: String,
    pub canonical: String,
    pub poset: Poset,
    pub profile: ClassProfile,
    pub twin_free: bool,
    pub inseparable: bool,
    pub interval_order: bool,
    pub unit_interval_order: bool,
    /// Only defined for twin-free posets.
    pub ab_characterization: Option<bool>,
    pub trichotomy: Trichotomy,
}

impl CensusRow {
    pub fn n(&self) -> usize {
        self.poset.len()
    }

    pub fn region(&self) -> String {
        self.profile.region()
    }
}

#[derive(Debug, Clone)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub discrepancies: Vec<String>,
}

impl Census {
    /// Twin-free rows per region label.
    pub fn region_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for row in self.rows.iter().filter(|r| r.twin_free) {
            *counts.entry(row.region()).or_insert(0) += 1;
        }
        counts
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        let sets = TypeSet::all_nonempty();
        let mut header = vec!["poset_id".to_string(), "canonical_encoding".into(), "n".into()];
        header.extend(sets.iter().map(|s| s.letters()));
        header.extend(
            ["twin_free", "inseparable", "interval_order", "unit_interval_order", "ab_char", "trichotomy", "region"]
                .map(String::from),
        );
        out.write_record(&header)?;
        let flag = |b: bool| if b { "1" } else { "0" }.to_string();
        for row in &self.rows {
            let mut rec = vec![row.id.clone(), row.canonical.clone(), row.n().to_string()];
            rec.extend(sets.iter().map(|s| flag(row.profile.verdict(*s))));
            rec.push(flag(row.twin_free));
            rec.push(flag(row.inseparable));
            rec.push(flag(row.interval_order));
            rec.push(flag(row.unit_interval_order));
            rec.push(row.ab_characterization.map_or(String::new(), flag));
            rec.push(row.trichotomy.label().to_string());
            rec.push(row.region());
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn census_row(id: String, p: Poset) -> Result<CensusRow, ClassifierError> {
    let profile = classify_sequential(&p, RecognizeOptions::default())?;
    let twin_free = p.is_twin_free();
    Ok(CensusRow {
        id,
        canonical: canonical_form(&p).to_bitstring(),
        twin_free,
        inseparable: p.is_inseparable(),
        interval_order: is_interval_order(&p),
        unit_interval_order: is_unit_interval_order(&p),
        ab_characterization: if twin_free { Some(ab_characterization(&p)?) } else { None },
        trichotomy: trichotomy(&p),
        profile,
        poset: p,
    })
}

/// Disagreements between a row's verdicts and the characterizations.
pub fn row_discrepancies(row: &CensusRow) -> Vec<String> {
    let mut out = Vec::new();
    let v = |s: &str| row.profile.verdict_str(s);
    let mut flag = |msg: String| out.push(format!("{}: {msg}", row.id));
    for s in ["A", "B", "C", "D", "BC", "BD"] {
        if v(s) != row.unit_interval_order {
            flag(format!("{s} verdict {} but unit interval order {}", v(s), row.unit_interval_order));
        }
    }
    if let Some(ab) = row.ab_characterization {
        if v("AB") != ab {
            flag(format!("AB verdict {} but forbidden-set test {ab}", v("AB")));
        }
    }
    match row.trichotomy {
        Trichotomy::PositiveCycle(_) if !row.profile.all(false) => flag("positive cycle but some verdict true".into()),
        Trichotomy::AllNegative if !row.profile.all(true) => flag("all cycles negative but some verdict false".into()),
        Trichotomy::AllNegative if contains_pattern(&row.poset, "2+2") || contains_pattern(&row.poset, "3+1") => {
            flag("all cycles negative but 2+2 or 3+1 present".into())
        }
        _ => {}
    }
    for msg in row.profile.invariant_violations() {
        flag(msg);
    }
    if row.twin_free {
        let p = &row.poset;
        if v("CD") && !contains_pattern(p, "2+2") && !(v("AB") && v("AC")) {
            flag("CD without 2+2 but not AB and AC".into());
        }
        if v("AC") && !contains_pattern(p, "Z") && !(v("AB") && v("CD")) {
            flag("AC without Z but not AB and CD".into());
        }
        if v("AB") && !contains_pattern(p, "H") && !(v("CD") && v("AC")) {
            flag("AB without H but not CD and AC".into());
        }
    }
    out
}

/// Every poset on `1..=n_max` elements passing `filter`.
pub fn census(n_max: usize, filter: CensusFilter) -> Result<Census, ClassifierError> {
    let mut inputs = Vec::new();
    for n in 1..=n_max {
        for (k, p) in enumerate_posets(n)?.into_iter().enumerate() {
            if filter.twin_free_only && !p.is_twin_free() {
                continue;
            }
            if filter.inseparable_only && !p.is_inseparable() {
                continue;
            }
            inputs.push((format!("n{n}_{k}"), p));
        }
    }
    let rows = inputs
        .into_par_iter()
        .map(|(id, p)| census_row(id, p))
        .collect::<Result<Vec<_>, _>>()?;
    let discrepancies = rows.iter().flat_map(row_discrepancies).collect();
    Ok(Census { rows, discrepancies })
}
