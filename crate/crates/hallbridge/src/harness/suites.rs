//! The individual verification sweeps.
//!
//! Every function enumerates its instances exhaustively inside the dimension
//! window and returns one [`Check`] per instance.  Failures carry both sides
//! fully serialized so coefficients can be diffed by hand.

use crate::cyclic::c2hall::{all_complexes_on_levels, keys_up_to, C2Element};
use crate::cyclic::dh::DhAlgebra;
use crate::cyclic::{decompose_verified, homology, C2Key};
use crate::double::{DoubleAlgebra, DoubleElement};
use crate::hall::HallAlgebra;
use crate::quiver::dim_vectors_up_to;
use crate::rep::{Engine, IsoKey};
use crate::Result;

use super::{class_label as klabel, labeled_classes, par_map_checks, Check};

fn c2label(e: &Engine, key: &C2Key) -> String {
    format!(
        "[{} {} K{:?} K*{:?}]",
        klabel(e, &key.h0),
        klabel(e, &key.h1),
        key.k,
        key.kstar
    )
}

/// Filtration-number associativity: for every class L in the window and every
/// ordered three-part split of its dimension vector, counting filtrations
/// through the front pair or the back pair must agree.
pub fn assoc(e: &Engine, max: &[u32]) -> Result<Vec<Check>> {
    let mut instances = Vec::new();
    for (llab, l) in labeled_classes(e, max)? {
        let dl = e.dim_of(&l);
        for dx in dim_vectors_up_to(&dl) {
            let rem: Vec<u32> = dl.iter().zip(&dx).map(|(&a, &b)| a - b).collect();
            for dy in dim_vectors_up_to(&rem) {
                let dz: Vec<u32> = rem.iter().zip(&dy).map(|(&a, &b)| a - b).collect();
                for x in e.classes_of_dim(&dx)? {
                    for y in e.classes_of_dim(&dy)? {
                        for z in e.classes_of_dim(&dz)? {
                            let label = format!(
                                "L={llab} X={} Y={} Z={}",
                                klabel(e, &x),
                                klabel(e, &y),
                                klabel(e, &z)
                            );
                            instances.push((label, l.clone(), x.clone(), y.clone(), z));
                        }
                    }
                }
            }
        }
    }
    Ok(par_map_checks(instances, |(label, l, x, y, z)| {
        Check::from_eval(
            "assoc",
            label.clone(),
            (|| {
                let (front, back) = e.hall_triple_routes(l, x, y, z)?;
                Ok((front == back, front.to_string(), back.to_string()))
            })(),
        )
    }))
}

/// Compatibility of the K-stripped coproduct with the twisted product: on
/// every ordered pair of classes in the window, the coproduct of the product
/// equals the product of the coproducts in the twisted tensor square.
pub fn green(h: &HallAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = h.engine;
    let n = e.num_vertices();
    let classes = labeled_classes(e, max)?;
    let mut instances = Vec::new();
    for (lx, x) in &classes {
        for (ly, y) in &classes {
            instances.push((format!("X={lx} Y={ly}"), x.clone(), y.clone()));
        }
    }
    Ok(par_map_checks(instances, |(label, x, y)| {
        Check::from_eval(
            "green",
            label.clone(),
            (|| {
                let prod = h.twisted(&h.module(x), &h.module(y))?;
                let lhs = h.coproduct(&prod)?.strip_k(n);
                let cx = h.coproduct(&h.module(x))?.strip_k(n);
                let cy = h.coproduct(&h.module(y))?.strip_k(n);
                let rhs = h.tensor_mult(&cx, &cy, true)?;
                Ok((lhs == rhs, lhs.format(e), rhs.format(e)))
            })(),
        )
    }))
}

/// Multiplicativity of the bilinear pairing against the coproduct: for every
/// ordered pair (x, y) in the window and every class z of the summed
/// dimension, φ(x·y, z) equals the tensor pairing of Δz against x ⊗ y.
pub fn pairing(h: &HallAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = h.engine;
    let classes = labeled_classes(e, max)?;
    let mut instances = Vec::new();
    for (lx, x) in &classes {
        for (ly, y) in &classes {
            let sum: Vec<u32> = e
                .dim_of(x)
                .iter()
                .zip(&e.dim_of(y))
                .map(|(&a, &b)| a + b)
                .collect();
            for z in e.classes_of_dim(&sum)? {
                let label = format!("X={lx} Y={ly} Z={}", klabel(e, &z));
                instances.push((label, x.clone(), y.clone(), z));
            }
        }
    }
    Ok(par_map_checks(instances, |(label, x, y, z)| {
        Check::from_eval(
            "pairing",
            label.clone(),
            (|| {
                let prod = h.twisted(&h.module(x), &h.module(y))?;
                let lhs = h.pairing(&prod, &h.module(z))?;
                let dz = h.coproduct(&h.module(z))?;
                let rhs = h.pairing_tensor(&dz, &h.module(x), &h.module(y))?;
                Ok((lhs == rhs, lhs.to_string(), rhs.to_string()))
            })(),
        )
    }))
}

enum CommuteJob {
    /// One contractible generator against an arbitrary complex class.
    Mixed {
        rel: &'static str,
        i: usize,
        key: C2Key,
    },
    /// Two contractible generators against each other.
    Pair {
        rel: &'static str,
        i: usize,
        j: usize,
    },
}

/// Commutation relations of the contractible classes: multiplying by a
/// contractible generator on either side scales a single basis vector by an
/// explicit power of v, the two sides commute up to the symmetrized form, and
/// products of contractible generators merge with coefficient one.
pub fn commute(dh: &DhAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = dh.engine;
    let n = e.num_vertices();
    let keys = keys_up_to(e, max)?;
    let mut instances = Vec::new();
    for i in 0..n {
        for rel in [
            "k-left",
            "k-right",
            "kstar-left",
            "kstar-right",
            "k-exchange",
            "kstar-exchange",
        ] {
            for key in &keys {
                instances.push((
                    format!("{rel} i={i} M={}", c2label(e, key)),
                    CommuteJob::Mixed {
                        rel,
                        i,
                        key: key.clone(),
                    },
                ));
            }
        }
        for j in 0..n {
            for rel in [
                "kk-product",
                "k-kstar-product",
                "kstar-kstar-product",
                "kk-exchange",
                "k-kstar-exchange",
                "kstar-kstar-exchange",
            ] {
                instances.push((format!("{rel} i={i} j={j}"), CommuteJob::Pair { rel, i, j }));
            }
        }
    }

    let unit_mult = |i: usize| {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };
    let gen_key = |i: usize, starred: bool| C2Key {
        h0: e.zero_key(),
        h1: e.zero_key(),
        k: if starred { vec![0; n] } else { unit_mult(i) },
        kstar: if starred { unit_mult(i) } else { vec![0; n] },
    };

    Ok(par_map_checks(instances, |(label, job)| {
        Check::from_eval(
            "commute",
            label.clone(),
            (|| {
                let (lhs, rhs) = match job {
                    CommuteJob::Mixed { rel, i, key } => {
                        let p = e.projective_dims_i64(&unit_mult(*i));
                        let class: Vec<i64> = e
                            .dim_of_i64(&key.h0)
                            .iter()
                            .zip(&e.dim_of_i64(&key.h1))
                            .map(|(&a, &b)| a - b)
                            .collect();
                        let starred = rel.starts_with("kstar");
                        let gen = gen_key(*i, starred);
                        let mut merged = key.clone();
                        if starred {
                            merged.kstar[*i] += 1;
                        } else {
                            merged.k[*i] += 1;
                        }
                        match *rel {
                            "k-left" => (
                                dh.c2.product_keys(&gen, key)?,
                                C2Element::term(merged, e.v_pow(e.quiver.euler_form(&p, &class))),
                            ),
                            "k-right" => (
                                dh.c2.product_keys(key, &gen)?,
                                C2Element::term(merged, e.v_pow(-e.quiver.euler_form(&class, &p))),
                            ),
                            "kstar-left" => (
                                dh.c2.product_keys(&gen, key)?,
                                C2Element::term(merged, e.v_pow(-e.quiver.euler_form(&p, &class))),
                            ),
                            "kstar-right" => (
                                dh.c2.product_keys(key, &gen)?,
                                C2Element::term(merged, e.v_pow(e.quiver.euler_form(&class, &p))),
                            ),
                            "k-exchange" => (
                                dh.c2.product_keys(&gen, key)?,
                                dh.c2
                                    .product_keys(key, &gen)?
                                    .scale(&e.v_pow(e.quiver.sym_form(&p, &class))),
                            ),
                            "kstar-exchange" => (
                                dh.c2.product_keys(&gen, key)?,
                                dh.c2
                                    .product_keys(key, &gen)?
                                    .scale(&e.v_pow(-e.quiver.sym_form(&p, &class))),
                            ),
                            _ => unreachable!(),
                        }
                    }
                    CommuteJob::Pair { rel, i, j } => {
                        let (a, b) = match *rel {
                            "kk-product" | "kk-exchange" => {
                                (gen_key(*i, false), gen_key(*j, false))
                            }
                            "k-kstar-product" | "k-kstar-exchange" => {
                                (gen_key(*i, false), gen_key(*j, true))
                            }
                            _ => (gen_key(*i, true), gen_key(*j, true)),
                        };
                        if rel.ends_with("exchange") {
                            (dh.c2.product_keys(&a, &b)?, dh.c2.product_keys(&b, &a)?)
                        } else {
                            let merged = C2Key {
                                h0: e.zero_key(),
                                h1: e.zero_key(),
                                k: a.k.iter().zip(&b.k).map(|(&x, &y)| x + y).collect(),
                                kstar: a.kstar.iter().zip(&b.kstar).map(|(&x, &y)| x + y).collect(),
                            };
                            (
                                dh.c2.product_keys(&a, &b)?,
                                C2Element::term(merged, e.scalar_one()),
                            )
                        }
                    }
                };
                Ok((lhs == rhs, lhs.format(e), rhs.format(e)))
            })(),
        )
    }))
}

/// Decompose/reassemble round-trips: every complex on every pair of
/// projective levels inside the window decomposes to a key whose model is
/// isomorphic to the original, and is purely contractible exactly when its
/// homology vanishes.
pub fn decomp(e: &Engine, max: &[u32]) -> Result<Vec<Check>> {
    let mults = e.projective_mults_up_to(max);
    let mut instances = Vec::new();
    for m1 in &mults {
        for m0 in &mults {
            for (idx, c) in all_complexes_on_levels(e, m1, m0)?.into_iter().enumerate() {
                instances.push((format!("P1={m1:?} P0={m0:?} #{idx}"), c));
            }
        }
    }
    Ok(par_map_checks(instances, |(label, c)| {
        Check::from_eval(
            "decomp",
            label.clone(),
            (|| {
                let key = decompose_verified(e, c)?;
                let (h0, h1) = homology(e, c)?;
                let acyclic = h0.total_dim() == 0 && h1.total_dim() == 0;
                let contractible = e.is_zero_key(&key.h0) && e.is_zero_key(&key.h1);
                Ok((
                    acyclic == contractible,
                    format!("homology dims ({:?}, {:?})", h0.dims, h1.dims),
                    c2label(e, &key),
                ))
            })(),
        )
    }))
}

/// The contractible-peeling identity: prepending contractible factors to a
/// split complex class costs exactly one explicit power of v.
pub fn peel(dh: &DhAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = dh.engine;
    let classes = labeled_classes(e, max)?;
    let mults = e.projective_mults_up_to(max);
    let mut instances = Vec::new();
    for (lx, x) in &classes {
        for (ly, y) in &classes {
            for t in &mults {
                for w in &mults {
                    instances.push((
                        format!("X={lx} Y={ly} T={t:?} W={w:?}"),
                        x.clone(),
                        y.clone(),
                        t.clone(),
                        w.clone(),
                    ));
                }
            }
        }
    }
    Ok(par_map_checks(instances, |(label, x, y, t, w)| {
        Check::from_eval(
            "peel",
            label.clone(),
            (|| {
                let (lhs, rhs) = dh.peel_identity_sides(x, y, t, w)?;
                Ok((lhs == rhs, lhs.format(e), rhs.format(e)))
            })(),
        )
    }))
}

/// Closed product formulas: the explicit sums for a split class times a
/// shifted split class (in both orders) match the from-scratch products, and
/// the two orders exchange under the grading-swap involution.
pub fn closed(dh: &DhAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = dh.engine;
    let n = e.num_vertices();
    let classes = labeled_classes(e, max)?;
    let mut instances = Vec::new();
    for (la, a) in &classes {
        for (lb, b) in &classes {
            for part in ["part1", "part2", "swap"] {
                instances.push((format!("{part} A={la} B={lb}"), part, a.clone(), b.clone()));
            }
        }
    }
    Ok(par_map_checks(instances, |(label, part, a, b)| {
        Check::from_eval(
            "closed",
            label.clone(),
            (|| {
                let split = dh.mono(vec![0; n], vec![0; n], a.clone(), e.zero_key());
                let shifted = dh.mono(vec![0; n], vec![0; n], e.zero_key(), b.clone());
                let (lhs, rhs) = match *part {
                    "part1" => (
                        dh.multiply_mono(&split, &shifted)?,
                        dh.closed_product(1, a, b)?,
                    ),
                    "part2" => (
                        dh.multiply_mono(&shifted, &split)?,
                        dh.closed_product(2, a, b)?,
                    ),
                    _ => (
                        dh.shift_elem(&dh.closed_product(1, a, b)?),
                        dh.closed_product(2, b, a)?,
                    ),
                };
                Ok((lhs == rhs, lhs.format(e), rhs.format(e)))
            })(),
        )
    }))
}

/// The commutator relation: on every ordered pair of classes in the window,
/// the two first-principles sides and the closed-form evaluation must all
/// agree coefficient for coefficient.
pub fn commutator(dh: &DhAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = dh.engine;
    let classes = labeled_classes(e, max)?;
    let mut instances = Vec::new();
    for (la, a) in &classes {
        for (lb, b) in &classes {
            instances.push((format!("A={la} B={lb}"), a.clone(), b.clone()));
        }
    }
    Ok(par_map_checks(instances, |(label, a, b)| {
        Check::from_eval(
            "commutator",
            label.clone(),
            (|| {
                let rep = dh.commutator_relation(a, b)?;
                Ok((
                    rep.equal(),
                    format!(
                        "direct {} | closed {}",
                        rep.lhs.format(e),
                        rep.closed_lhs.format(e)
                    ),
                    format!(
                        "direct {} | closed {}",
                        rep.rhs.format(e),
                        rep.closed_rhs.format(e)
                    ),
                ))
            })(),
        )
    }))
}

enum DoubleJob {
    /// Normal ordering terminates and yields some normal form.
    Order(IsoKey, IsoKey),
    /// Substituting the normal forms back into the defining relation
    /// reproduces its other side.
    Relation(IsoKey, IsoKey),
    /// The realization map intertwines the two products.
    Correspond((IsoKey, IsoKey), (IsoKey, IsoKey)),
}

/// The double construction: normal ordering, the relation that defines it,
/// and the correspondence with the complex algebra.
pub fn double(dbl: &DoubleAlgebra, dh: &DhAlgebra, max: &[u32]) -> Result<Vec<Check>> {
    let e = dbl.engine;
    let n = e.num_vertices();
    let classes = labeled_classes(e, max)?;
    let mut instances = Vec::new();
    for (la, a) in &classes {
        for (lb, b) in &classes {
            instances.push((
                format!("order neg={lb} pos={la}"),
                DoubleJob::Order(a.clone(), b.clone()),
            ));
            instances.push((
                format!("relation A={la} B={lb}"),
                DoubleJob::Relation(a.clone(), b.clone()),
            ));
        }
    }
    for (la, a) in &classes {
        for (lb, b) in &classes {
            for (lc, c) in &classes {
                for (ld, d) in &classes {
                    instances.push((
                        format!("correspond ({la},{lb})·({lc},{ld})"),
                        DoubleJob::Correspond((a.clone(), b.clone()), (c.clone(), d.clone())),
                    ));
                }
            }
        }
    }

    let mod_key = |k: &IsoKey| (k.clone(), vec![0i64; n]);
    Ok(par_map_checks(instances, |(label, job)| {
        Check::from_eval(
            "double",
            label.clone(),
            (|| match job {
                DoubleJob::Order(a, b) => {
                    let out = dbl.normal_order(&mod_key(b), &mod_key(a))?;
                    Ok((true, out.format(e), String::new()))
                }
                DoubleJob::Relation(a, b) => {
                    let (lhs, rhs_raw) = dbl.cross_relation_sides(&mod_key(a), &mod_key(b))?;
                    let mut resolved = DoubleElement::zero();
                    for (c, n1, p2) in rhs_raw {
                        resolved.add(&dbl.normal_order(&n1, &p2)?.scale(&c));
                    }
                    Ok((lhs == resolved, lhs.format(e), resolved.format(e)))
                }
                DoubleJob::Correspond((a, b), (c, d)) => {
                    let x = DoubleElement::term((mod_key(a), mod_key(b)), e.scalar_one());
                    let y = DoubleElement::term((mod_key(c), mod_key(d)), e.scalar_one());
                    let lhs = dbl.realize(dh, &dbl.multiply(&x, &y)?)?;
                    let rhs = dh.multiply(&dbl.realize(dh, &x)?, &dbl.realize(dh, &y)?)?;
                    Ok((lhs == rhs, lhs.format(e), rhs.format(e)))
                }
            })(),
        )
    }))
}
