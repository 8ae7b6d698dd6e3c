//! Verification suites: closed forms against identities and brute-force oracles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::codes::{enumerate_decorated_families, verify_codes};
use crate::counts::{
    count_tight, count_tight_method, decorated_tree_count, four_odd_slicings, gennonbip, pifin,
    piinter, slice_identities_check, slicings, slicings_from_tight, substitution_identities_check,
    tight_from_slicings, transmutation_check, volume_poly, BoundarySpec, Method,
};
use crate::error::Error;
use crate::forests::verify_forests;
use crate::mapgen::oracle_sweep;
use crate::numeric::{rat, rat_frac, HalfInt, Rational};
use crate::polys::verify_poly_identities;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Polys,
    Counts,
    Codes,
    Forests,
    Oracle,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Polys => "polys",
            Suite::Counts => "counts",
            Suite::Codes => "codes",
            Suite::Forests => "forests",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "polys" => Suite::Polys,
            "counts" => Suite::Counts,
            "codes" => Suite::Codes,
            "forests" => Suite::Forests,
            "oracle" => Suite::Oracle,
            "all" => Suite::All,
            other => return Err(format!("unknown suite '{other}'")),
        })
    }
}

/// Runs a suite. `bound` caps total boundary length (twice the half-lengths);
/// the oracle suite fails with [`Error::DartCap`] when `bound` exceeds `cap`.
pub fn run_suite(suite: Suite, bound: u32, cap: usize) -> Result<Report, Error> {
    let b = bound.max(1);
    Ok(match suite {
        Suite::Polys => verify_poly_identities(b.min(4), b.div_ceil(2)),
        Suite::Counts => counts_suite(b),
        Suite::Codes => verify_codes(b.div_ceil(2).min(6), b.min(4), (b as usize / 2).min(4)),
        Suite::Forests => verify_forests((b as usize).min(6)),
        Suite::Oracle => oracle_suite(b, cap)?,
        Suite::All => {
            let mut rep = Report::new("all");
            for s in [
                Suite::Polys,
                Suite::Counts,
                Suite::Codes,
                Suite::Forests,
                Suite::Oracle,
            ] {
                rep.absorb(run_suite(s, bound, cap)?);
            }
            rep
        }
    })
}

/// Tuples whose first two entries are free and whose remaining entries are
/// nondecreasing, with `1 <= n`, lengths `<= max_each`, total `<= max_total`,
/// at most `max_zeros` zero lengths and not all zero.
pub fn length_tuples(
    n_range: std::ops::RangeInclusive<usize>,
    max_each: u32,
    max_total: u32,
    max_zeros: usize,
) -> Vec<Vec<u32>> {
    fn rest(
        len: usize,
        lo: u32,
        max_each: u32,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for d in lo..=max_each.min(left) {
            cur.push(d);
            rest(len - 1, d, max_each, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for n in n_range {
        let head = n.min(2);
        let mut heads = vec![Vec::new()];
        for _ in 0..head {
            heads = heads
                .into_iter()
                .flat_map(|h: Vec<u32>| (0..=max_each).map(move |d| [h.clone(), vec![d]].concat()))
                .collect();
        }
        for h in heads {
            let used: u32 = h.iter().sum();
            if used > max_total {
                continue;
            }
            let mut tails = Vec::new();
            rest(
                n - head,
                0,
                max_each,
                max_total - used,
                &mut h.clone(),
                &mut tails,
            );
            out.extend(tails.into_iter().filter(|t| {
                t.iter().any(|&d| d > 0) && t.iter().filter(|&&d| d == 0).count() <= max_zeros
            }));
        }
    }
    out
}

fn halves(lengths: &[u32]) -> Vec<HalfInt> {
    lengths.iter().map(|&d| HalfInt::from_length(d)).collect()
}

fn show(lengths: &[u32]) -> String {
    lengths
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Multivariate identities, slice identities, substitution roundtrips and
/// decorated-tree enumeration, all at total length `<= bound`.
pub fn counts_suite(bound: u32) -> Report {
    let mut rep = Report::new("counts");
    rep.absorb(multivariate_check(bound.min(5)));
    rep.absorb(slices_check(bound.min(8)));
    rep.absorb(decorated_check(bound.min(6)));
    rep.absorb(substitution_identities_check(bound.min(12), 4));
    let sweep = length_tuples(3..=bound.max(3) as usize, bound, bound, 2);
    rep.absorb(roundtrip_check(&sweep));
    rep
}

/// The two-face, finite and intermediate forms of the tight count and the
/// transmutation relations, for `3 <= n <= 6` and lengths `<= max_each`.
pub fn multivariate_check(max_each: u32) -> Report {
    let mut rep = Report::new("multivariate");
    let parts: Vec<Report> = length_tuples(3..=6, max_each, 6 * max_each, 6)
        .par_iter()
        .map(|ls| {
            let mut r = Report::new("multivariate");
            let ms = halves(ls);
            let spec = BoundarySpec::new(ls.clone()).expect("nonzero");
            let tight = count_tight(&spec).expect("n >= 3");
            r.check(
                || format!("Pifin = N at ({})", show(ls)),
                tight.clone(),
                pifin(&ms).unwrap(),
            );
            r.check(
                || format!("Piinter = N at ({})", show(ls)),
                tight.clone(),
                piinter(&ms).unwrap(),
            );
            if ls[0] > 0 && ls[1] > 0 {
                r.check(
                    || format!("gennonbip = N at ({})", show(ls)),
                    tight,
                    gennonbip(&ms).unwrap(),
                );
            }
            r.absorb(transmutation_check(&ms));
            r
        })
        .collect();
    for p in parts {
        rep.absorb(p);
    }
    rep
}

/// Slice identities for every tuple with total length `<= bound`.
pub fn slices_check(bound: u32) -> Report {
    let mut rep = Report::new("slices");
    let parts: Vec<Report> = length_tuples(1..=bound as usize, bound, bound, 2)
        .par_iter()
        .map(|ls| slice_identities_check(&halves(ls)))
        .collect();
    for p in parts {
        rep.absorb(p);
    }
    rep
}

/// Decorated-tree counts against exhaustive enumeration, total length `<= bound`.
pub fn decorated_check(bound: u32) -> Report {
    let mut rep = Report::new("decorated trees");
    for ls in length_tuples(1..=bound as usize, bound, bound, 1) {
        let ms = halves(&ls);
        for eps in [0u8, 1] {
            let brute = enumerate_decorated_families(eps, &ms, 6).map(|v| BigInt::from(v.len()));
            let closed = decorated_tree_count(eps as i64, &ms);
            rep.check(
                || format!("eps={eps} at ({})", show(&ls)),
                format!("{closed:?}"),
                format!("{brute:?}"),
            );
        }
    }
    rep
}

/// Forced methods, substitution roundtrips and the four-odd closed form on a list of tuples.
pub fn roundtrip_check(sweep: &[Vec<u32>]) -> Report {
    let mut rep = Report::new("roundtrip");
    for ls in sweep {
        let spec = BoundarySpec::new(ls.clone()).expect("nonzero");
        let tight = count_tight(&spec).unwrap();
        let forced = Method::Auto.resolve(spec.odd_count());
        match count_tight_method(&spec, forced) {
            Ok((v, _)) => rep.check(
                || format!("{forced} = unified at ({})", show(ls)),
                tight.clone(),
                v,
            ),
            Err(e) => rep.fail(
                format!("{forced} at ({})", show(ls)),
                tight.to_string(),
                e.to_string(),
            ),
        }
        rep.check(
            || format!("tight_from_slicings at ({})", show(ls)),
            tight,
            tight_from_slicings(&spec).unwrap(),
        );
        let sl = slicings(&spec).unwrap();
        rep.check(
            || format!("slicings_from_tight at ({})", show(ls)),
            sl.clone(),
            slicings_from_tight(&spec).unwrap(),
        );
        if ls.len() == 4 && ls.iter().all(|d| d % 2 == 1) {
            let h = halves(ls);
            rep.check(
                || format!("four-odd slicings at ({})", show(ls)),
                sl,
                four_odd_slicings([h[0], h[1], h[2], h[3]]),
            );
        }
    }
    rep
}

/// Closed forms against the map oracle: every boundary multiset with `n >= 3`,
/// total length `<= bound` and up to two extra zero lengths.
pub fn oracle_suite(bound: u32, cap: usize) -> Result<Report, Error> {
    let mut rep = Report::new("oracle");
    for tight in [true, false] {
        for row in oracle_sweep(bound, 2, 3, tight, cap)? {
            let spec = BoundarySpec::new(row.lengths.clone()).expect("positive entry");
            let formula = if tight {
                count_tight(&spec)
            } else {
                slicings(&spec)
            }
            .expect("n >= 3");
            let kind = if tight { "tight" } else { "non-tight" };
            rep.check(
                || format!("{kind} ({})", show(&row.lengths)),
                Rational::from_integer(formula),
                row.value,
            );
        }
    }
    Ok(rep)
}

fn count_at(lengths: &[u32]) -> Rational {
    Rational::from_integer(
        count_tight(&BoundarySpec::new(lengths.to_vec()).expect("nonzero")).expect("n >= 3"),
    )
}

/// For `n = 4`: on each parity class, the count is `c_0 + sum c_i d_i^2`, fitted
/// from five grid points and checked on the rest of the grid
/// `d_i in {p_i, p_i + 2, ..., p_i + 2 (steps - 1)}`; classes with an odd
/// number of odd lengths vanish identically.
pub fn quasi_polynomial_check(steps: u32) -> Report {
    let mut rep = Report::new("quasi-polynomial");
    let n = 4usize;
    for class in 0u32..(1 << n) {
        let p: Vec<u32> = (0..n).map(|i| class >> i & 1).collect();
        let grid: Vec<Vec<u32>> = (0..steps.pow(n as u32))
            .map(|code| {
                (0..n)
                    .map(|i| p[i] + 2 * (code / steps.pow(i as u32) % steps))
                    .collect()
            })
            .filter(|d: &Vec<u32>| d.iter().any(|&x| x > 0))
            .collect();
        if class.count_ones() % 2 == 1 {
            for d in &grid {
                rep.check(
                    || format!("odd class vanishes at ({})", show(d)),
                    Rational::zero(),
                    count_at(d),
                );
            }
            continue;
        }
        let base: Vec<u32> = p.iter().map(|&x| x + 2).collect();
        let sq = |x: u32| rat(x as i64 * x as i64);
        let n0 = count_at(&base);
        let coeffs: Vec<Rational> = (0..n)
            .map(|i| {
                let mut d = base.clone();
                d[i] += 2;
                (count_at(&d) - &n0) / (sq(d[i]) - sq(base[i]))
            })
            .collect();
        let c0 = &n0
            - base
                .iter()
                .zip(&coeffs)
                .map(|(&b, c)| sq(b) * c)
                .sum::<Rational>();
        for d in &grid {
            let fit = &c0
                + d.iter()
                    .zip(&coeffs)
                    .map(|(&x, c)| sq(x) * c)
                    .sum::<Rational>();
            rep.check(
                || format!("interpolation at ({})", show(d)),
                fit,
                count_at(d),
            );
        }
    }
    rep
}

/// Volume polynomial values and top-degree agreement with the lattice counts:
/// for odd `t`, `N(t d)` is a polynomial in `t^2` with leading coefficient `V(d) / 2`.
pub fn volume_check() -> Report {
    let mut rep = Report::new("volume");
    for b in [[1i64, 2, 3], [0, 0, 5], [7, 1, 4]] {
        let bs: Vec<Rational> = b.iter().map(|&x| rat(x)).collect();
        rep.check(|| format!("V03{b:?}"), rat(2), volume_poly(&bs));
    }
    for b in 0..=10i64 {
        rep.check(
            || format!("V04({b},0,0,0)"),
            rat_frac(b * b, 2),
            volume_poly(&[rat(b), rat(0), rat(0), rat(0)]),
        );
    }
    // direct term list for n = 5: (2!/2^3) sum over |k| = 2 of prod (b^k/k!)^2
    let b = [1i64, 2, 3, 4, 5];
    let mut direct = Rational::zero();
    for i in 0..5 {
        for j in i..5 {
            let term = if i == j {
                rat_frac(b[i].pow(4), 4)
            } else {
                rat(b[i] * b[i] * b[j] * b[j])
            };
            direct += term;
        }
    }
    direct *= rat_frac(2, 8);
    rep.check(
        || "V05 term list".into(),
        direct,
        volume_poly(&b.iter().map(|&x| rat(x)).collect::<Vec<_>>()),
    );

    for ds in [
        vec![2u32, 2, 2],
        vec![1, 1, 2],
        vec![2, 4, 6, 2],
        vec![1, 3, 2, 2],
        vec![2, 2, 4, 2, 6],
        vec![1, 1, 1, 1, 2],
    ] {
        let n = ds.len();
        let deg = n - 3;
        // odd scale factors keep the parity class; leading coefficient in x = t^2
        let ts: Vec<u32> = (0..=deg as u32).map(|i| 2 * i + 1).collect();
        let xs: Vec<Rational> = ts.iter().map(|&t| rat(t as i64 * t as i64)).collect();
        let ys: Vec<Rational> = ts
            .iter()
            .map(|&t| count_at(&ds.iter().map(|&d| d * t).collect::<Vec<_>>()))
            .collect();
        let vol = volume_poly(&ds.iter().map(|&d| rat(d as i64)).collect::<Vec<_>>()) / rat(2);
        rep.check(
            || format!("top degree ({})", show(&ds)),
            vol,
            leading_coefficient(&xs, &ys),
        );
    }
    rep
}

fn leading_coefficient(xs: &[Rational], ys: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, y) in ys.iter().enumerate() {
        let mut den = Rational::one();
        for (i, x) in xs.iter().enumerate() {
            if i != j {
                den *= &xs[j] - x;
            }
        }
        acc += y / den;
    }
    acc
}
