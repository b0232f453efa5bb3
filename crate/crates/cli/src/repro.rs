//! The bundled reproduction suite: thirteen claims, each an exact integer
//! check of a known result or a property sweep, evaluated live and compared
//! against frozen expectations.
//!
//! Claim ids are stable; `expected` and `computed` are built by the same
//! formatting code, so a claim matches iff every compared quantity is equal.
//! Where the computed value contradicts a printed value in the literature
//! but is internally consistent, the claim carries an explanatory note and
//! still counts as a match; nothing is ever adjusted to meet a printed
//! number.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use mosaic_belts::arith::exact_sqrt;
use mosaic_belts::intersect::{self, MatchRecord};
use mosaic_belts::pell::{self, PellEquation};
use mosaic_belts::periodic::{self, FamilyCase};
use mosaic_belts::quartic::{self, QuarticCaseKind};
use mosaic_belts::recurrence::{identity_residual, BinaryRecurrence};
use mosaic_belts::{BeltKind, SchlafliMosaic};

pub const CLAIM_COUNT: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub detail: String,
    pub expected: String,
    pub computed: String,
    pub bound: String,
    pub status: ClaimStatus,
    pub notes: Vec<String>,
    pub millis: u128,
}

impl crate::output::Row for ClaimReport {
    fn csv_header() -> &'static str {
        "id,status,detail,expected,computed,bound,notes,millis"
    }
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            format!("{:?}", self.status).to_lowercase(),
            self.detail.clone(),
            self.expected.clone(),
            self.computed.clone(),
            self.bound.clone(),
            self.notes.join("; "),
            self.millis.to_string(),
        ]
    }
    fn text_line(&self) -> String {
        let mark = match self.status {
            ClaimStatus::Match => "ok  ",
            ClaimStatus::Mismatch => "FAIL",
        };
        let mut line = format!("{mark} {:<18} {} [{} ms]", self.id, self.detail, self.millis);
        if self.status == ClaimStatus::Mismatch {
            line.push_str(&format!("\n      expected: {}\n      computed: {}", self.expected, self.computed));
        }
        for note in &self.notes {
            line.push_str(&format!("\n      note: {note}"));
        }
        line
    }
}

struct ClaimBody {
    expected: String,
    computed: String,
    bound: String,
    notes: Vec<String>,
}

fn run(id: &str, detail: &str, body: impl FnOnce() -> ClaimBody) -> ClaimReport {
    let started = Instant::now();
    let body = body();
    let status =
        if body.expected == body.computed { ClaimStatus::Match } else { ClaimStatus::Mismatch };
    ClaimReport {
        id: id.to_string(),
        detail: detail.to_string(),
        expected: body.expected,
        computed: body.computed,
        bound: body.bound,
        status,
        notes: body.notes,
        millis: started.elapsed().as_millis(),
    }
}

fn reference(kind: BeltKind) -> BinaryRecurrence {
    SchlafliMosaic::reference_sequence(kind)
}

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Deterministic pseudo-random stream for the randomized sweeps.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

pub fn run_claim(number: usize) -> ClaimReport {
    match number {
        1 => claim_01_table(),
        2 => claim_02_identities(),
        3 => claim_03_common_terms_a(),
        4 => claim_04_common_terms_b(),
        5 => claim_05_quartic_a2(),
        6 => claim_06_quartic_a3(),
        7 => claim_07_quartic_b2(),
        8 => claim_08_families_a2(),
        9 => claim_09_families_b1(),
        10 => claim_10_first_solutions_table(),
        11 => claim_11_giant_p(),
        12 => claim_12_divisibility_filters(),
        13 => claim_13_property_sweeps(),
        _ => panic!("claim number out of range: {number}"),
    }
}

pub fn run_all() -> Vec<ClaimReport> {
    (1..=CLAIM_COUNT).map(run_claim).collect()
}

fn claim_01_table() -> ClaimReport {
    run("01-first-terms", "first ten a- and b-terms of the reference mosaic {4,5}", || {
        let render = |terms: &[BigInt]| {
            terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
        };
        let a: Vec<BigInt> = (1..=10).map(|n| reference(BeltKind::A).term(n)).collect();
        let b: Vec<BigInt> = (1..=10).map(|n| reference(BeltKind::B).term(n)).collect();
        ClaimBody {
            expected: "a: 5,25,95,355,1325,4945,18455,68875,257045,959305 | \
                       b: 5,15,55,205,765,2855,10655,39765,148405,553855"
                .into(),
            computed: format!("a: {} | b: {}", render(&a), render(&b)),
            bound: "n <= 10".into(),
            notes: vec![],
        }
    })
}

fn claim_02_identities() -> ClaimReport {
    run(
        "02-norm-identities",
        "associate identity H_n^2 - D G_n^2 = 4 C (-s)^n for the reference sequences and random recurrences",
        || {
            let mut ok = true;
            // walking cursors keeps the n <= 1000 sweep linear
            for kind in [BeltKind::A, BeltKind::B] {
                for rec in [reference(kind), reference(kind).associate()] {
                    let assoc = rec.associate();
                    let d = rec.discriminant();
                    let four_c: BigInt = 4 * rec.constant();
                    let mut g = rec.cursor();
                    let mut h = assoc.cursor();
                    for _ in 0..=1000u32 {
                        // s = -1 here, so (-s)^n = 1
                        if h.value() * h.value() - &d * g.value() * g.value() != four_c {
                            ok = false;
                        }
                        g.advance();
                        h.advance();
                    }
                }
            }

            let mut rng = SplitMix(0x6d6f7361);
            let mut random_ok = true;
            for _ in 0..1000 {
                let pick = |v: u64| (v % 41) as i64 - 20;
                let rec = BinaryRecurrence::new(
                    pick(rng.next()),
                    pick(rng.next()),
                    pick(rng.next()),
                    pick(rng.next()),
                );
                let n = rng.next() % 31;
                if !identity_residual(&rec, n).is_zero() {
                    random_ok = false;
                }
            }

            let a_assoc = reference(BeltKind::A).associate();
            let b_assoc = reference(BeltKind::B).associate();
            ClaimBody {
                expected: "reference residuals zero; random residuals zero; A1=30 A2=90 B1=10 B2=50".into(),
                computed: format!(
                    "reference residuals {}; random residuals {}; A1={} A2={} B1={} B2={}",
                    if ok { "zero" } else { "NONZERO" },
                    if random_ok { "zero" } else { "NONZERO" },
                    a_assoc.term(1),
                    a_assoc.term(2),
                    b_assoc.term(1),
                    b_assoc.term(2),
                ),
                bound: "n <= 1000 for reference sequences; 1000 random recurrences with |r|,|s|,|G0|,|G1| <= 20, n <= 30".into(),
                notes: vec![],
            }
        },
    )
}

fn render_matches(records: &[MatchRecord]) -> String {
    if records.is_empty() {
        return "none".into();
    }
    records
        .iter()
        .map(|r| format!("{{{},{}}}:{}_{}=ref_{}={}", r.p, r.q, r.kind, r.k, r.ell, r.value))
        .collect::<Vec<_>>()
        .join(" ")
}

fn claim_03_common_terms_a() -> ClaimReport {
    run(
        "03-a-grid-search",
        "bound-complete a-coincidence search over 4<=p<=25, 4<=q<=18",
        || {
            let bound = pow10(40);
            let records = intersect::search_grid(BeltKind::A, 4..=25, 4..=18, &bound);
            let expected: Vec<MatchRecord> = (5..=25)
                .map(|p| MatchRecord {
                    kind: BeltKind::A,
                    p,
                    q: 5,
                    k: 1,
                    ell: 1,
                    value: BigInt::from(5),
                })
                .collect();
            ClaimBody {
                expected: render_matches(&expected),
                computed: render_matches(&records),
                bound: "values <= 10^40; {4,5} excluded as the reference cell".into(),
                notes: vec!["only the trivial coincidence a_1 = 5 at q = 5 exists on this grid".into()],
            }
        },
    )
}

fn claim_04_common_terms_b() -> ClaimReport {
    run(
        "04-b-grid-search",
        "bound-complete b-coincidence search over 4<=p,q<=10 and 11<=p<=25, 4<=q<=8",
        || {
            let bound = pow10(40);
            let mut records = intersect::search_grid(BeltKind::B, 4..=10, 4..=10, &bound);
            records.extend(intersect::search_grid(BeltKind::B, 11..=25, 4..=8, &bound));
            records.sort_by(|a, b| (a.q, a.p, &a.value).cmp(&(b.q, b.p, &b.value)));
            let expected = vec![
                MatchRecord { kind: BeltKind::B, p: 6, q: 5, k: 1, ell: 2, value: BigInt::from(15) },
                MatchRecord { kind: BeltKind::B, p: 10, q: 5, k: 2, ell: 5, value: BigInt::from(765) },
                MatchRecord { kind: BeltKind::B, p: 14, q: 5, k: 1, ell: 3, value: BigInt::from(55) },
            ];
            ClaimBody {
                expected: render_matches(&expected),
                computed: render_matches(&records),
                bound: "values <= 10^40".into(),
                notes: vec![],
            }
        },
    )
}

fn render_quartic(entries: &[(i64, quartic::QuarticOutcome)]) -> String {
    let rows: Vec<String> = entries
        .iter()
        .flat_map(|(fixed, outcome)| {
            outcome.solutions.iter().map(move |s| {
                format!("fixed={fixed}:free={}:value={}:ell={}", s.free_variable, s.value, s.ell)
            })
        })
        .collect();
    if rows.is_empty() {
        "none".into()
    } else {
        rows.join(" ")
    }
}

fn claim_05_quartic_a2() -> ClaimReport {
    run(
        "05-quartic-a2",
        "Pell-route solve of a_2 = reference term with p fixed in [4,1600]",
        || {
            let entries = quartic::sweep_via_pell(QuarticCaseKind::A2FixedP, 4..=1600, None)
                .expect("sweep runs");
            ClaimBody {
                expected: "fixed=26:free=5:value=355:ell=4 \
                           fixed=90:free=29:value=68875:ell=8 \
                           fixed=332:free=5:value=4945:ell=6"
                    .into(),
                computed: render_quartic(&entries),
                bound: "p in [4,1600]; per-p value bound = max |f| over the default scan interval [-10^4,10^4]".into(),
                notes: vec![
                    "the value 355 for {26,5} is sometimes printed as 335; recomputed exactly: \
                     (kappa+1)q = 71*5 = 355, the 4th reference a-term"
                        .into(),
                ],
            }
        },
    )
}

fn claim_06_quartic_a3() -> ClaimReport {
    run(
        "06-quartic-a3",
        "interval scan of a_3 = reference term with q fixed in [4,10000]",
        || {
            let entries = quartic::sweep_scan(QuarticCaseKind::A3FixedQ, 4..=10_000, -10_000, 10_000)
                .expect("sweep runs");
            ClaimBody {
                expected: "none".into(),
                computed: render_quartic(&entries),
                bound: "q in [4,10000]; p scanned over [-10^4,10^4]".into(),
                notes: vec!["no valid non-reference mosaic solves the equation on this grid".into()],
            }
        },
    )
}

fn claim_07_quartic_b2() -> ClaimReport {
    run(
        "07-quartic-b2",
        "Pell-route solve of b_2 = reference term, p fixed in [4,10000] and q fixed in [4,2800]",
        || {
            let p_fixed = quartic::sweep_via_pell(QuarticCaseKind::B2FixedP, 4..=10_000, None)
                .expect("sweep runs");
            let q_fixed = quartic::sweep_via_pell(QuarticCaseKind::B2FixedQ, 4..=2_800, None)
                .expect("sweep runs");
            ClaimBody {
                expected: "p-fixed: fixed=10:free=5:value=765:ell=5 | q-fixed: fixed=5:free=10:value=765:ell=5".into(),
                computed: format!(
                    "p-fixed: {} | q-fixed: {}",
                    render_quartic(&p_fixed),
                    render_quartic(&q_fixed)
                ),
                bound: "p in [4,10000] / q in [4,2800]; per-case value bound = max |f| over [-10^4,10^4]".into(),
                notes: vec![],
            }
        },
    )
}

fn render_families(qs: &[i64], case: FamilyCase) -> String {
    qs.iter()
        .map(|&q| {
            let families = periodic::index_families(case, q).expect("q >= 4");
            let descr: Vec<String> = families.iter().map(|f| f.to_string()).collect();
            format!("q={q}: {}", if descr.is_empty() { "none".into() } else { descr.join(",") })
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn claim_08_families_a2() -> ClaimReport {
    run("08-families-a2", "index families of a_2 = reference term for q in {5,19,23,25}", || {
        ClaimBody {
            expected: "q=5: 2+2t | q=19: 58+90t,78+90t | q=23: 28+88t | q=25: 32+33t".into(),
            computed: render_families(&[5, 19, 23, 25], FamilyCase::A2),
            bound: "periods computed exactly modulo q(q-2)".into(),
            notes: vec![],
        }
    })
}

fn claim_09_families_b1() -> ClaimReport {
    run("09-families-b1", "index families of b_1 = reference term for q in {9,11,15,17}", || {
        ClaimBody {
            expected: "q=9: 5+18t,14+18t | q=11: 3+10t,8+10t | q=15: 2+6t,5+6t | q=17: 5+18t,14+18t"
                .into(),
            computed: render_families(&[9, 11, 15, 17], FamilyCase::B1),
            bound: "periods computed exactly modulo q".into(),
            notes: vec![],
        }
    })
}

fn claim_10_first_solutions_table() -> ClaimReport {
    run("10-a2-q5-members", "first six members of the a_2 family at q = 5", || {
        let family = &periodic::index_families(FamilyCase::A2, 5).expect("q = 5")[0];
        let members = periodic::family_verify(family, 6);
        let values: Vec<String> = members.iter().map(|m| m.value.to_string()).collect();
        let ps: Vec<String> = members.iter().map(|m| m.p.to_string()).collect();
        ClaimBody {
            expected: "values 25,355,4945,68875,959305,13361395; p 4,26,332,4594,63956,890762".into(),
            computed: format!("values {}; p {}", values.join(","), ps.join(",")),
            bound: "t = 0..5".into(),
            notes: vec!["the t=0 member recovers the reference mosaic {4,5} itself".into()],
        }
    })
}

fn claim_11_giant_p() -> ClaimReport {
    run("11-giant-p", "back-solved p for the first members of both q = 19 families", || {
        let a = reference(BeltKind::A);
        let value_58 = a.term(58);
        let value_78 = a.term(78);
        let p_58 = periodic::back_solve_p(&value_58, 19, FamilyCase::A2).expect("exact");
        let p_78 = periodic::back_solve_p(&value_78, 19, FamilyCase::A2).expect("exact");

        // internal consistency: the recovered mosaics reproduce the terms
        let m_58 = SchlafliMosaic::new(p_58.clone(), 19).expect("valid mosaic");
        let m_78 = SchlafliMosaic::new(p_78.clone(), 19).expect("valid mosaic");
        let consistent = (m_58.kappa() + 1) * m_58.q() == value_58
            && (m_78.kappa() + 1) * m_78.q() == value_78;

        let printed_78 = "2318394927973629460854893981169574319067870";
        let note_78 = if p_78.to_string() == printed_78 {
            format!("ell=78 back-solve agrees digit-for-digit with the published value {printed_78}")
        } else {
            format!("ell=78 back-solve DISAGREES with the published value {printed_78}: computed {p_78}")
        };

        ClaimBody {
            expected: "p(58)=8437940669128098583408551589590; consistency ok".into(),
            computed: format!(
                "p(58)={p_58}; consistency {}",
                if consistent { "ok" } else { "BROKEN" }
            ),
            bound: "exact".into(),
            notes: vec![note_78],
        }
    })
}

fn claim_12_divisibility_filters() -> ClaimReport {
    run(
        "12-divisibility",
        "never-dividing primes <= 25 and admissible q <= 25 for both kinds",
        || {
            let render = |set: &BTreeSet<u64>| {
                set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            };
            let render_i = |set: &BTreeSet<i64>| {
                set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            };
            let never_a = intersect::never_dividing_primes(&reference(BeltKind::A), 25).unwrap();
            let never_b = intersect::never_dividing_primes(&reference(BeltKind::B), 25).unwrap();
            let adm_a = intersect::admissible_q(BeltKind::A, 25);
            let adm_b = intersect::admissible_q(BeltKind::B, 25);
            ClaimBody {
                expected: "never-a 2,3,7,11,13,17; never-b 2,7,13,19,23; adm-a 5,19,23,25; adm-b 5,9,11,15,17".into(),
                computed: format!(
                    "never-a {}; never-b {}; adm-a {}; adm-b {}",
                    render(&never_a),
                    render(&never_b),
                    render_i(&adm_a),
                    render_i(&adm_b)
                ),
                bound: "one full period per modulus".into(),
                notes: vec![
                    "the admissible b-set is sometimes quoted with q=25 included; exact periods \
                     rule it out: reference b-residues modulo 25 cycle through {5,15} and never \
                     vanish (confirmed by direct scan of the first 10^4 terms, and by the empty \
                     q=25 family analysis)"
                        .into(),
                ],
            }
        },
    )
}

fn claim_13_property_sweeps() -> ClaimReport {
    run(
        "13-property-sweeps",
        "Pell enumeration vs direct scan, fundamental units vs oracle, merge vs quadratic oracle, period purity",
        || {
            let pell_ok = pell_equivalence_sweep();
            let units_ok = fundamental_unit_sweep();
            let merge_ok = merge_oracle_sweep();
            let periods_ok = period_purity_sweep();
            ClaimBody {
                expected: "pell-equivalence ok; units ok; merge ok; period-purity ok".into(),
                computed: format!(
                    "pell-equivalence {}; units {}; merge {}; period-purity {}",
                    verdict(pell_ok),
                    verdict(units_ok),
                    verdict(merge_ok),
                    verdict(periods_ok)
                ),
                bound: "D <= 50 with |N| <= 1000 at x <= 10^5; units D <= 200; 50 mosaics; moduli <= 2000".into(),
                notes: vec![
                    "unit minimality for D <= 200 is checked by direct scan up to u <= 10^6 and, \
                     beyond that, by the exact power certificate (no unit power equals the result)"
                        .into(),
                ],
            }
        },
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAILED" }
}

/// Direct-scan oracle vs class-orbit enumeration over the full small grid.
fn pell_equivalence_sweep() -> bool {
    const X_MAX: u64 = 100_000;
    let mut total_solutions = 0usize;
    for d in 2u64..=50 {
        let d_big = BigInt::from(d);
        if exact_sqrt(&d_big).is_some() {
            continue;
        }
        // one y-scan finds all (x, y, N) with x, y in window and |N| <= 1000:
        // x^2 must land within 1000 of D*y^2
        let mut by_n: std::collections::BTreeMap<i64, Vec<(BigInt, BigInt)>> = Default::default();
        for y in 0..=X_MAX {
            let w = d * y * y;
            let x_lo = w.saturating_sub(1000).isqrt();
            let x_hi = (w + 1000).isqrt().min(X_MAX);
            for x in x_lo..=x_hi {
                let n = x as i128 * x as i128 - w as i128;
                if n != 0 && n.abs() <= 1000 {
                    by_n
                        .entry(n as i64)
                        .or_default()
                        .push((BigInt::from(x), BigInt::from(y)));
                }
            }
        }
        for n in -1000i64..=1000 {
            if n == 0 {
                continue;
            }
            let eq = PellEquation::new(d_big.clone(), n).expect("valid equation");
            let ours = pell::enumerate_solutions(&eq, X_MAX).expect("enumeration runs");
            let mut oracle = by_n.remove(&n).unwrap_or_default();
            oracle.sort();
            oracle.dedup();
            if ours != oracle {
                eprintln!("pell mismatch at D={d} N={n}: ours={ours:?} oracle={oracle:?}");
                return false;
            }
            total_solutions += ours.len();
        }
    }
    // an empty-vs-empty sweep would prove nothing
    if total_solutions < 10_000 {
        eprintln!("pell sweep found suspiciously few solutions: {total_solutions}");
        return false;
    }
    true
}

/// Chebyshev-style value T_k(a): the first component of the k-th power of a
/// unit with first component a.
fn unit_power_first_component(k: u32, a: &BigInt) -> BigInt {
    let mut prev = BigInt::one();
    let mut cur = a.clone();
    for _ in 1..k {
        let next = 2 * a * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// True if (t, u) equals some smaller unit raised to a power k >= 2.
fn is_proper_unit_power(t: &BigInt, u: &BigInt, d: &BigInt) -> bool {
    for k in 2u32..=128 {
        if unit_power_first_component(k, &BigInt::from(2)) > *t {
            break;
        }
        // T_k is strictly increasing in a, so binary search for T_k(a) = t
        let (mut lo, mut hi) = (BigInt::from(2), t.clone());
        let mut found: Option<BigInt> = None;
        while lo <= hi {
            let mid: BigInt = (&lo + &hi) / 2;
            match unit_power_first_component(k, &mid).cmp(t) {
                std::cmp::Ordering::Less => lo = &mid + 1,
                std::cmp::Ordering::Greater => hi = &mid - 1,
                std::cmp::Ordering::Equal => {
                    found = Some(mid);
                    break;
                }
            }
        }
        let Some(a) = found else { continue };
        // recover b from a^2 - D b^2 = 1 and confirm the full power
        let b_sq: BigInt = (&a * &a - 1) / d;
        if (&b_sq * d + 1) != &a * &a {
            continue;
        }
        let Some(b) = exact_sqrt(&b_sq) else { continue };
        let (mut x, mut y) = (BigInt::one(), BigInt::zero());
        for _ in 0..k {
            let nx = &x * &a + d * &y * &b;
            let ny = &x * &b + &y * &a;
            x = nx;
            y = ny;
        }
        if &x == t && &y == u {
            return true;
        }
    }
    false
}

/// Fundamental units for all non-square D <= 200: exactness always, direct
/// minimal-scan equality where the scan is feasible, power certificate above.
fn fundamental_unit_sweep() -> bool {
    const SCAN_CAP: u64 = 1_000_000;
    let (mut scanned_count, mut certified_count) = (0usize, 0usize);
    for d in 2u64..=200 {
        let d_big = BigInt::from(d);
        if exact_sqrt(&d_big).is_some() {
            continue;
        }
        let unit = pell::fundamental_unit(&d_big).expect("non-square D");
        if &unit.t * &unit.t - &d_big * &unit.u * &unit.u != BigInt::one() {
            eprintln!("unit for D={d} is not a solution");
            return false;
        }
        let scanned = (1..=SCAN_CAP).find_map(|u| {
            let t_sq = d as u128 * u as u128 * u as u128 + 1;
            let t = t_sq.isqrt();
            (t * t == t_sq).then_some((t, u))
        });
        match scanned {
            Some((t, u)) => {
                if unit.t != BigInt::from(t) || unit.u != BigInt::from(u) {
                    eprintln!("unit for D={d}: scan found ({t},{u}), solver found ({},{})", unit.t, unit.u);
                    return false;
                }
                scanned_count += 1;
            }
            None => {
                if unit.u <= BigInt::from(SCAN_CAP) {
                    eprintln!("unit for D={d}: scan missed ({},{})", unit.t, unit.u);
                    return false;
                }
                if is_proper_unit_power(&unit.t, &unit.u, &d_big) {
                    eprintln!("unit for D={d} is a proper power, not fundamental");
                    return false;
                }
                certified_count += 1;
            }
        }
    }
    // the direct scan must carry most of the range, the certificate the rest
    if scanned_count < 150 || certified_count == 0 {
        eprintln!("unit sweep coverage off: {scanned_count} scanned, {certified_count} certified");
        return false;
    }
    true
}

/// Merge walk vs the quadratic-time pairwise intersection on 50 mosaics.
fn merge_oracle_sweep() -> bool {
    let mut rng = SplitMix(0x62656c74);
    let reference_b = reference(BeltKind::B);
    for _ in 0..50 {
        let p = 4 + (rng.next() % 40) as i64;
        let q = 4 + (rng.next() % 20) as i64;
        let Ok(mosaic) = SchlafliMosaic::new(p, q) else { continue };
        let rec = mosaic.recurrence(BeltKind::B);
        let terms_a: Vec<BigInt> = (1..=60).map(|n| rec.term(n)).collect();
        let terms_b: Vec<BigInt> = (1..=60).map(|n| reference_b.term(n)).collect();
        let bound = terms_a[59].clone().min(terms_b[59].clone());
        let mut oracle = Vec::new();
        for (i, va) in terms_a.iter().enumerate() {
            for (j, vb) in terms_b.iter().enumerate() {
                if va == vb && *va <= bound {
                    oracle.push((i as u64 + 1, j as u64 + 1, va.clone()));
                }
            }
        }
        let ours: Vec<(u64, u64, BigInt)> = intersect::common_terms(&rec, &reference_b, &bound)
            .into_iter()
            .map(|c| (c.k, c.ell, c.value))
            .collect();
        if ours != oracle {
            eprintln!("merge mismatch for {{{p},{q}}}");
            return false;
        }
    }
    true
}

/// Pure periodicity of the reference a-sequence for every modulus <= 2000,
/// checked by an independent linear residue walk over three periods.
fn period_purity_sweep() -> bool {
    let a = reference(BeltKind::A);
    for m in 2u64..=2000 {
        let profile = match periodic::period_profile(&a, m) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("profile failed for m={m}: {e}");
                return false;
            }
        };
        let pi = profile.period;
        let total = 3 * pi;
        let mut residues = Vec::with_capacity(total as usize);
        let (mut prev, mut cur) = ((m - 5 % m) % m, 5 % m);
        for _ in 0..total {
            residues.push(prev);
            let next = (4 * cur % m + (m - prev % m)) % m;
            prev = cur;
            cur = next;
        }
        for n in 0..(2 * pi) as usize {
            if residues[n + pi as usize] != residues[n]
                || residues[n] != profile.residue_at(n as u64)
            {
                eprintln!("period purity broken at m={m} n={n}");
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_power_components_match_direct_multiplication() {
        // (2,1) is the fundamental unit for D=3; its square is (7,4)
        let d = BigInt::from(3);
        assert_eq!(unit_power_first_component(2, &BigInt::from(2)), BigInt::from(7));
        assert!(is_proper_unit_power(&BigInt::from(7), &BigInt::from(4), &d));
        assert!(!is_proper_unit_power(&BigInt::from(2), &BigInt::from(1), &d));
    }
}
