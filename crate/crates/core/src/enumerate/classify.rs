use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::catalog::{Catalog, CatalogEntry};
use super::EnumerationError;
use crate::canon::CanonicalCode;
use crate::half::HalfInteger;
use crate::perm::factorial;
use crate::topology::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BucketKey {
    pub gdegree: HalfInteger,
    pub bipartite: bool,
    /// Boundary multiset label for `d = 3`, `-` otherwise.
    pub boundary: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bucket {
    #[serde(flatten)]
    pub key: BucketKey,
    pub count: usize,
    pub codes: Vec<CanonicalCode>,
}

/// Catalog entries bucketed by G-degree, bipartiteness and boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationTable {
    pub d: Option<usize>,
    pub total: usize,
    pub buckets: Vec<Bucket>,
    /// Contracted `d = 3` entries with every `g_î = 1`.
    pub identity_checked: usize,
    /// Those among them with `ω_G ≠ p − 1 + Σ g^∂`.
    pub identity_violations: Vec<CanonicalCode>,
}

impl ClassificationTable {
    pub fn bucket(&self, key: &BucketKey) -> Option<&Bucket> {
        self.buckets.iter().find(|b| &b.key == key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization cannot fail")
    }

    /// Columns `gdegree,bipartite,boundary,count`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["gdegree", "bipartite", "boundary", "count"]).expect("in-memory write");
        for b in &self.buckets {
            w.write_record([
                b.key.gdegree.to_string(),
                b.key.bipartite.to_string(),
                b.key.boundary.clone(),
                b.count.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
    }
}

fn satisfies_boundary_identity(e: &CatalogEntry) -> Option<bool> {
    let profile = e.profile.as_ref()?;
    if e.contracted != Verdict::Yes || e.hat_counts.iter().any(|&g| g != 1) {
        return None;
    }
    Some(e.gdegree == HalfInteger::from_int(e.p() as i64 - 1) + profile.boundary_genus_sum)
}

pub fn classify(catalog: &Catalog) -> ClassificationTable {
    let mut buckets: BTreeMap<BucketKey, Vec<CanonicalCode>> = BTreeMap::new();
    let mut identity_checked = 0;
    let mut identity_violations = Vec::new();
    for e in &catalog.entries {
        let key = BucketKey { gdegree: e.gdegree, bipartite: e.bipartite, boundary: e.boundary_label() };
        buckets.entry(key).or_default().push(e.code.clone());
        if let Some(ok) = satisfies_boundary_identity(e) {
            identity_checked += 1;
            if !ok {
                identity_violations.push(e.code.clone());
            }
        }
    }
    let buckets: Vec<Bucket> =
        buckets.into_iter().map(|(key, codes)| Bucket { key, count: codes.len(), codes }).collect();
    debug_assert_eq!(buckets.iter().map(|b| b.count).sum::<usize>(), catalog.len());
    ClassificationTable {
        d: catalog.d().or_else(|| catalog.entries.first().map(|e| e.d)),
        total: catalog.len(),
        buckets,
        identity_checked,
        identity_violations,
    }
}

/// `2S̄/(d−1)! + (R̄ − d)`: the largest `p` a graph with G-degree `S̄` and
/// `Σ g_î = R̄` can have.
pub fn finiteness_bound(d: usize, gdegree: HalfInteger, hat_sum: usize) -> Ratio<i64> {
    Ratio::new(gdegree.twice_value(), factorial(d - 1) as i64) + Ratio::from_integer(hat_sum as i64 - d as i64)
}

fn serialize_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub d: usize,
    pub gdegree: HalfInteger,
    pub hat_sum: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub bound: Ratio<i64>,
    /// Entries in the `(S̄, R̄)` cell.
    pub count: usize,
    pub max_p_found: Option<usize>,
    pub violations: Vec<CanonicalCode>,
}

/// Checks the bound on the `(S̄, R̄)` cell of a catalog that reaches at
/// least the bound.
pub fn finiteness_check(catalog: &Catalog, gdegree: HalfInteger, hat_sum: usize) -> Result<FinitenessReport, EnumerationError> {
    let params = catalog
        .params
        .as_ref()
        .ok_or_else(|| EnumerationError::InvalidParams("catalog carries no generation parameters".into()))?;
    let bound = finiteness_bound(params.d, gdegree, hat_sum);
    let required = bound.floor().to_integer();
    if (catalog.max_p() as i64) < required {
        return Err(EnumerationError::IncompleteCatalog { required, available: catalog.max_p() });
    }
    let cell: Vec<&CatalogEntry> =
        catalog.entries.iter().filter(|e| e.gdegree == gdegree && e.hat_sum() == hat_sum).collect();
    Ok(FinitenessReport {
        d: params.d,
        gdegree,
        hat_sum,
        bound,
        count: cell.len(),
        max_p_found: cell.iter().map(|e| e.p()).max(),
        violations: cell.iter().filter(|e| Ratio::from_integer(e.p() as i64) > bound).map(|e| e.code.clone()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessViolation {
    pub code: CanonicalCode,
    pub p: usize,
    pub gdegree: HalfInteger,
    pub hat_sum: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub bound: Ratio<i64>,
}

/// Every entry checked against the bound for its own `(ω_G, Σ g_î)`.
pub fn finiteness_sweep(catalog: &Catalog) -> Vec<FinitenessViolation> {
    catalog
        .entries
        .iter()
        .filter_map(|e| {
            let bound = finiteness_bound(e.d, e.gdegree, e.hat_sum());
            (Ratio::from_integer(e.p() as i64) > bound).then(|| FinitenessViolation {
                code: e.code.clone(),
                p: e.p(),
                gdegree: e.gdegree,
                hat_sum: e.hat_sum(),
                bound,
            })
        })
        .collect()
}

/// Contracted singular entries sharing boundary, G-degree and reduction
/// fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeGroup {
    pub boundary: String,
    pub h: usize,
    pub gdegree: HalfInteger,
    pub fingerprint: CanonicalCode,
    pub count: usize,
    pub min_p: usize,
    pub boundary_genus_sum: HalfInteger,
    /// `min_p − 1 + Σ g^∂`.
    pub predicted: HalfInteger,
    /// `h ≥ 2` and `ω_G < predicted`.
    pub flagged: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub groups: Vec<ProbeGroup>,
    pub flagged: usize,
}

pub fn conjecture_probe(catalog: &Catalog) -> Result<ProbeReport, EnumerationError> {
    if let Some(d) = catalog.d().filter(|&d| d != 3) {
        return Err(EnumerationError::WrongDimension { expected: 3, found: d });
    }
    let mut groups: BTreeMap<(String, HalfInteger, CanonicalCode), ProbeGroup> = BTreeMap::new();
    for e in catalog.entries.iter().filter(|e| e.contracted == Verdict::Yes) {
        let Some(profile) = e.profile.as_ref().filter(|pr| pr.h >= 1) else { continue };
        let key = (profile.boundary_label(), e.gdegree, e.fingerprint.clone());
        let group = groups.entry(key).or_insert_with(|| ProbeGroup {
            boundary: profile.boundary_label(),
            h: profile.h,
            gdegree: e.gdegree,
            fingerprint: e.fingerprint.clone(),
            count: 0,
            min_p: e.p(),
            boundary_genus_sum: profile.boundary_genus_sum,
            predicted: HalfInteger::ZERO,
            flagged: false,
        });
        group.count += 1;
        group.min_p = group.min_p.min(e.p());
    }
    let mut report = ProbeReport::default();
    for (_, mut g) in groups {
        g.predicted = HalfInteger::from_int(g.min_p as i64 - 1) + g.boundary_genus_sum;
        g.flagged = g.h >= 2 && g.gdegree < g.predicted;
        report.flagged += usize::from(g.flagged);
        report.groups.push(g);
    }
    Ok(report)
}
