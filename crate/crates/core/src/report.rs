//! Bound reports: torsion orders of knots and the ribbon-distance bounds
//! they imply.

use std::fmt::Write as _;

use serde::Serialize;

use crate::homology::HomologySummary;

/// Which torsion order a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    /// h-torsion order of Bar-Natan homology.
    Mu,
    /// X_*-torsion order at a specialization of α-homology.
    NuPhi,
}

impl Invariant {
    pub fn symbol(self) -> &'static str {
        match self {
            Invariant::Mu => "mu",
            Invariant::NuPhi => "nu_phi",
        }
    }
}

/// One knot of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub components: usize,
    pub summary: HomologySummary,
}

impl Entry {
    pub fn is_knot(&self) -> bool {
        self.components == 1
    }
}

/// Torsion orders of knots and the lower bounds on ribbon distance they
/// give. Every bound is recomputed from the stored summaries.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub theory: String,
    pub entries: Vec<Entry>,
    /// Saddles of a given ribbon movie between the first two entries.
    pub movie_saddles: Option<u32>,
}

/// Lower bound for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairBound {
    pub first: String,
    pub second: String,
    pub lower_bound: u32,
}

/// A flat view for serialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportView {
    pub theory: String,
    pub invariant: Option<Invariant>,
    pub knots: Vec<KnotView>,
    pub pairs: Vec<PairBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub movie_saddles: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub movie_consistent: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotView {
    pub name: String,
    pub value: Option<u32>,
    /// The ribbon distance from the unknot is at least this.
    pub distance_from_unknot_at_least: Option<u32>,
}

impl BoundReport {
    pub fn new(theory: impl Into<String>, entries: Vec<Entry>) -> Self {
        BoundReport { theory: theory.into(), entries, movie_saddles: None }
    }

    pub fn with_movie(mut self, saddles: u32) -> Self {
        self.movie_saddles = Some(saddles);
        self
    }

    pub fn invariant(&self) -> Option<Invariant> {
        let s = &self.entries.first()?.summary;
        if s.mu.is_some() {
            Some(Invariant::Mu)
        } else if s.nu_phi.is_some() {
            Some(Invariant::NuPhi)
        } else {
            None
        }
    }

    /// The torsion order of an entry, if it is a knot and the theory has one.
    pub fn value(&self, e: &Entry) -> Option<u32> {
        if !e.is_knot() {
            return None;
        }
        match self.invariant()? {
            Invariant::Mu => e.summary.mu,
            Invariant::NuPhi => e.summary.nu_phi,
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w: Vec<String> = self
            .entries
            .iter()
            .filter(|e| !e.is_knot())
            .map(|e| format!("{} has {} components; bounds are stated for knots only", e.name, e.components))
            .collect();
        if self.invariant().is_none() {
            w.push(format!("{} has no torsion order to bound with", self.theory));
        }
        w.extend(self.entries.iter().filter_map(|e| e.summary.note.clone()));
        w.dedup();
        w
    }

    /// `|v(K) − v(K')|` for every pair of knots.
    pub fn pairs(&self) -> Vec<PairBound> {
        let mut out = Vec::new();
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                if let (Some(x), Some(y)) = (self.value(a), self.value(b)) {
                    out.push(PairBound { first: a.name.clone(), second: b.name.clone(), lower_bound: x.abs_diff(y) });
                }
            }
        }
        out
    }

    /// Whether a movie with the stated saddle count between the first two
    /// entries respects the bound.
    pub fn movie_consistent(&self) -> Option<bool> {
        let d = self.movie_saddles?;
        let (a, b) = (self.entries.first()?, self.entries.get(1)?);
        Some(self.value(a)?.abs_diff(self.value(b)?) <= d)
    }

    pub fn view(&self) -> ReportView {
        ReportView {
            theory: self.theory.clone(),
            invariant: self.invariant(),
            knots: self
                .entries
                .iter()
                .map(|e| KnotView {
                    name: e.name.clone(),
                    value: self.value(e),
                    distance_from_unknot_at_least: self.value(e),
                })
                .collect(),
            pairs: self.pairs(),
            movie_saddles: self.movie_saddles,
            movie_consistent: self.movie_consistent(),
            warnings: self.warnings(),
        }
    }

    pub fn render_table(&self) -> String {
        let v = self.view();
        let sym = v.invariant.map_or("-", Invariant::symbol);
        let mut out = format!("theory: {}\n", v.theory);
        let _ = writeln!(out, "{:<12} {:>7} {:>22}", "knot", sym, "ribbon dist to unknot");
        for k in &v.knots {
            let show = |x: Option<u32>| x.map_or("-".to_string(), |x| x.to_string());
            let _ = writeln!(out, "{:<12} {:>7} {:>22}", k.name, show(k.value), format!(">= {}", show(k.distance_from_unknot_at_least)));
        }
        for p in &v.pairs {
            let _ = writeln!(out, "ribbon distance({}, {}) >= |{sym}| difference = {}", p.first, p.second, p.lower_bound);
        }
        if let (Some(d), Some(ok)) = (v.movie_saddles, v.movie_consistent) {
            let _ = writeln!(out, "movie with {d} saddle(s): {}", if ok { "consistent" } else { "INCONSISTENT" });
        }
        for w in &v.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::TorsionEntry;

    fn entry(name: &str, mu: u32, components: usize) -> Entry {
        let torsion = (mu > 0).then_some(TorsionEntry { r: 0, q: Some(0), order: mu }).into_iter().collect();
        Entry {
            name: name.into(),
            components,
            summary: HomologySummary {
                theory: "bn".into(),
                knot: name.into(),
                free: vec![],
                torsion,
                mu: Some(mu),
                nu_phi: None,
                note: None,
            },
        }
    }

    #[test]
    fn pair_bounds() {
        let r = BoundReport::new("bn", vec![entry("unknot", 0, 1), entry("3_1", 1, 1)]).with_movie(1);
        assert_eq!(r.pairs()[0].lower_bound, 1);
        assert_eq!(r.movie_consistent(), Some(true));
        let same = BoundReport::new("bn", vec![entry("3_1", 1, 1), entry("3_1", 1, 1)]);
        assert_eq!(same.pairs()[0].lower_bound, 0);
        assert!(r.render_table().contains(">= 1"));
    }

    #[test]
    fn links_are_refused() {
        let r = BoundReport::new("bn", vec![entry("unknot", 0, 1), entry("hopf", 1, 2)]);
        assert!(r.pairs().is_empty());
        assert_eq!(r.warnings().len(), 1);
    }
}
