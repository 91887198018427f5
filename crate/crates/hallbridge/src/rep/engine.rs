//! The computation engine: a quiver plus a prime field, with shared caches
//! for every expensive count.  An `Engine` is immutable once built and safe
//! to share across worker threads.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use crate::linalg::FpMat;
use crate::quiver::{Path, Quiver};
use crate::scalar::Scalar;
use crate::{Error, Result};

use super::store::HallStore;
use super::{IsoKey, Rep, Resolution};

/// Monotone counters exposed in reports.
#[derive(Debug, Default)]
pub struct Counters {
    /// Hall numbers computed from scratch by subobject enumeration.
    pub hall_computed: AtomicU64,
    /// Hall numbers answered from the in-memory cache.
    pub hall_cache_hits: AtomicU64,
    /// Hall numbers answered from the persistent store.
    pub hall_store_hits: AtomicU64,
}

impl Counters {
    pub fn snapshot(&self) -> (u64, u64, u64) {
        (
            self.hall_computed.load(Ordering::Relaxed),
            self.hall_cache_hits.load(Ordering::Relaxed),
            self.hall_store_hits.load(Ordering::Relaxed),
        )
    }
    pub(crate) fn bump(counter: &AtomicU64) {
        counter.fetch_add(1, Ordering::Relaxed);
    }
}

pub struct Engine {
    pub quiver: Quiver,
    /// Field size; restricted to small primes so F_q = Z/q.
    pub q: u32,
    /// Maximum number of raw candidates any single enumeration may visit.
    pub enum_budget: u64,
    /// Maximum size of a base-change group product used for orbit searches.
    pub orbit_budget: u64,
    pub counters: Counters,
    pub(crate) canon: RwLock<HashMap<Vec<u8>, IsoKey>>,
    pub(crate) classes: RwLock<HashMap<Vec<u32>, Vec<IsoKey>>>,
    pub(crate) indec: RwLock<HashMap<Vec<u32>, Vec<IsoKey>>>,
    pub(crate) homdim: RwLock<HashMap<(IsoKey, IsoKey), usize>>,
    pub(crate) autc: RwLock<HashMap<IsoKey, u64>>,
    pub(crate) hall: RwLock<HashMap<(IsoKey, IsoKey, IsoKey), u64>>,
    /// Per-(A,B) classification of Hom(A,B) by (kernel, cokernel) class.
    pub(crate) pairc: RwLock<HashMap<(IsoKey, IsoKey), Arc<HashMap<(IsoKey, IsoKey), u64>>>>,
    pub(crate) resol: RwLock<HashMap<IsoKey, Resolution>>,
    pub(crate) store: Option<Mutex<HallStore>>,
    /// paths_by_pair[i][j]: all paths from vertex i to vertex j, in a fixed
    /// breadth-first order; the basis of the indecomposable projective P_i.
    pub(crate) paths_by_pair: Vec<Vec<Vec<Path>>>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Engine {
    pub fn new(quiver: Quiver, q: u32) -> Result<Engine> {
        if !is_prime(q) {
            return Err(Error::Usage(format!(
                "field size {q} is not a prime; only prime fields are supported"
            )));
        }
        if q > 13 {
            return Err(Error::Resource(format!(
                "field size {q} exceeds the exact-enumeration budget"
            )));
        }
        let n = quiver.num_vertices();
        let mut paths_by_pair = vec![vec![Vec::new(); n]; n];
        for p in quiver.all_paths() {
            paths_by_pair[p.start][p.end].push(p);
        }
        Ok(Engine {
            quiver,
            q,
            enum_budget: 1 << 20,
            orbit_budget: 1 << 22,
            counters: Counters::default(),
            canon: RwLock::new(HashMap::new()),
            classes: RwLock::new(HashMap::new()),
            indec: RwLock::new(HashMap::new()),
            homdim: RwLock::new(HashMap::new()),
            autc: RwLock::new(HashMap::new()),
            hall: RwLock::new(HashMap::new()),
            pairc: RwLock::new(HashMap::new()),
            resol: RwLock::new(HashMap::new()),
            store: None,
            paths_by_pair,
        })
    }

    pub fn with_store(quiver: Quiver, q: u32, store: HallStore) -> Result<Engine> {
        let mut e = Engine::new(quiver, q)?;
        e.store = Some(Mutex::new(store));
        Ok(e)
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// One (field-size, scalar) helper each so call sites stay short.
    pub fn scalar_one(&self) -> Scalar {
        Scalar::one(self.q)
    }

    pub fn scalar_int(&self, n: i64) -> Scalar {
        Scalar::from_int(n, self.q)
    }

    pub fn v_pow(&self, n: i64) -> Scalar {
        Scalar::v_pow(n, self.q)
    }

    pub fn rep_of(&self, key: &IsoKey) -> Rep {
        Rep::decode(&self.quiver, &key.0)
    }

    pub fn dim_of(&self, key: &IsoKey) -> Vec<u32> {
        key.0[..self.num_vertices()]
            .iter()
            .map(|&b| b as u32)
            .collect()
    }

    pub fn dim_of_i64(&self, key: &IsoKey) -> Vec<i64> {
        key.0[..self.num_vertices()]
            .iter()
            .map(|&b| b as i64)
            .collect()
    }

    pub fn zero_key(&self) -> IsoKey {
        IsoKey(Rep::zero(&self.quiver).encode())
    }

    pub fn simple_key(&self, vertex: usize) -> IsoKey {
        // a simple has no base-change freedom, so its raw encoding is canonical
        IsoKey(Rep::simple(&self.quiver, vertex).encode())
    }

    pub fn is_zero_key(&self, key: &IsoKey) -> bool {
        self.dim_of(key).iter().all(|&d| d == 0)
    }

    /// Canonical key of a direct sum of classes.
    pub fn sum_key(&self, keys: &[&IsoKey]) -> Result<IsoKey> {
        let mut acc = Rep::zero(&self.quiver);
        for k in keys {
            acc = acc.direct_sum(&self.rep_of(k));
        }
        self.canonical_key(&acc)
    }

    /// Human-readable rendering: dimension vector plus the arrow matrices of
    /// the canonical representative.
    pub fn describe(&self, key: &IsoKey) -> String {
        let rep = self.rep_of(key);
        let dims: Vec<String> = rep.dims.iter().map(|d| d.to_string()).collect();
        let mut s = format!("dim=({})", dims.join(","));
        for (k, a) in self.quiver.arrows.iter().enumerate() {
            let m = &rep.mats[k];
            if m.rows == 0 || m.cols == 0 {
                continue;
            }
            let rows: Vec<String> = (0..m.rows)
                .map(|i| {
                    let entries: Vec<String> = m.row(i).iter().map(|e| e.to_string()).collect();
                    format!("[{}]", entries.join(","))
                })
                .collect();
            s.push_str(&format!(" {}=[{}]", a.label, rows.join(",")));
        }
        s
    }

    /// The matrix of the composite along a path (identity for the trivial
    /// path).
    pub fn path_action(&self, rep: &Rep, path: &Path) -> FpMat {
        let mut m = FpMat::identity(rep.dims[path.start] as usize);
        for &ai in &path.arrows {
            m = rep.mats[ai].mul(&m, self.q);
        }
        m
    }

    pub(crate) fn guard_enum(&self, size: u128, what: &str) -> Result<u64> {
        if size > self.enum_budget as u128 {
            return Err(Error::Resource(format!(
                "{what} needs {size} candidates (budget {})",
                self.enum_budget
            )));
        }
        Ok(size as u64)
    }

    /// q^e as an exact u64 (with overflow guard; exponents here are tiny).
    pub fn qpow(&self, e: usize) -> u64 {
        (self.q as u64)
            .checked_pow(e as u32)
            .expect("field power overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::a2;
    use super::*;

    #[test]
    fn rejects_bad_fields() {
        assert!(matches!(Engine::new(a2(), 4), Err(Error::Usage(_))));
        assert!(matches!(Engine::new(a2(), 1), Err(Error::Usage(_))));
        assert!(matches!(Engine::new(a2(), 6), Err(Error::Usage(_))));
        assert!(matches!(Engine::new(a2(), 17), Err(Error::Resource(_))));
        assert!(Engine::new(a2(), 2).is_ok());
        assert!(Engine::new(a2(), 3).is_ok());
    }

    #[test]
    fn simple_and_zero_keys() {
        let e = Engine::new(a2(), 3).unwrap();
        assert_eq!(e.dim_of(&e.simple_key(0)), vec![1, 0]);
        assert_eq!(e.dim_of(&e.simple_key(1)), vec![0, 1]);
        assert!(e.is_zero_key(&e.zero_key()));
    }

    #[test]
    fn path_action_composes() {
        let e = Engine::new(a2(), 3).unwrap();
        let p1 = super::super::testutil::a2_big(&e.quiver);
        let paths = &e.paths_by_pair[0][1];
        assert_eq!(paths.len(), 1);
        let act = e.path_action(&p1, &paths[0]);
        assert_eq!(act.entry(0, 0), 1);
    }
}
