//! Per-vertex and per-pair checks of the coordinate identities behind the
//! odd-degree decomposition. Everything is recomputed with plain field
//! arithmetic and compared against the closed forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ff::{Fe, GaloisField};

use super::{alpha, Layer, OddDecomposition, OddError, Vertex, DEFAULT_BUDGET};

pub const DEFAULT_SAMPLES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimMode {
    /// Every vertex, every pair of first coordinates.
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OddClaims {
    pub q: u64,
    pub r: usize,
    pub mu: u64,
    pub mode: String,
    /// `X` membership agrees with the explicit translate decomposition.
    pub claim1_checked: usize,
    pub claim1_ok: bool,
    /// Coefficients of `φ_{θ^l}(X)` points against `α` of the pulled-back `s`.
    pub claim2_checked: usize,
    pub claim2_ok: bool,
    /// The index formula for `θ^{−l}s` against field division.
    pub pullback_checked: usize,
    pub pullback_ok: bool,
    pub claim3_checked: usize,
    pub claim3_ok: bool,
    pub claim4_checked: usize,
    pub claim4_ok: bool,
    /// `(s+x)² − t − y` against the system at `s − x`, for `Z`-shaped pairs.
    pub claim5_identity_ok: bool,
    /// Adjacent pairs inside `Z` actually met.
    pub claim5_pairs: usize,
    pub claim5_ok: bool,
    /// Only in exhaustive mode.
    pub z_size: Option<usize>,
    pub ok: bool,
}

/// Exhaustive when the graph fits the default budget, sampled otherwise.
pub fn verify_claims_odd(base: &GaloisField, r: usize) -> Result<OddClaims, OddError> {
    let d = OddDecomposition::new(base, r)?;
    let mode = if d.vertex_count() <= DEFAULT_BUDGET {
        ClaimMode::Exhaustive
    } else {
        ClaimMode::Sampled { samples: DEFAULT_SAMPLES, seed: 0 }
    };
    run(&d, mode)
}

pub fn verify_claims_odd_with(base: &GaloisField, r: usize, mode: ClaimMode) -> Result<OddClaims, OddError> {
    let d = OddDecomposition::new(base, r)?;
    if mode == ClaimMode::Exhaustive && d.vertex_count() > DEFAULT_BUDGET {
        return Err(OddError::TooLarge { what: "exhaustive claim check", n: d.vertex_count(), limit: DEFAULT_BUDGET });
    }
    run(&d, mode)
}

/// Tally of one family of checks.
#[derive(Default)]
struct Tally {
    checked: usize,
    failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.failed += (!ok) as usize;
    }

    fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Checker<'a> {
    d: &'a OddDecomposition,
    claim1: Tally,
    claim2: Tally,
    pullback: Tally,
    claim3: Tally,
    claim4: Tally,
    claim5_identity: Tally,
    claim5: Tally,
}

impl<'a> Checker<'a> {
    fn new(d: &'a OddDecomposition) -> Self {
        Checker {
            d,
            claim1: Tally::default(),
            claim2: Tally::default(),
            pullback: Tally::default(),
            claim3: Tally::default(),
            claim4: Tally::default(),
            claim5_identity: Tally::default(),
            claim5: Tally::default(),
        }
    }

    /// Splits `s = x + k` (low and high coordinates), forms
    /// `y = t − 4kx − 2k²` and compares with the `α` test and the label.
    fn check_claim1(&mut self, (s, t): Vertex) {
        let d = self.d;
        let f = d.field();
        let c = d.coords(s);
        let mut low = c.clone();
        let mut high = c;
        for i in 0..d.t() {
            if i < d.r() {
                high[i] = Fe::ZERO;
            } else {
                low[i] = Fe::ZERO;
            }
        }
        let (x, k) = (d.tower().assemble(&low), d.tower().assemble(&high));
        let y = f.sub(f.sub(t, f.scale(4, f.mul(k, x))), f.scale(2, f.square(k)));
        let y_top = d.coeff(y, 2 * d.r());
        let want = d.base().sign(y_top).map(|sign| (d.translate_index(k), sign));
        self.claim1.record(d.s_label((s, t)) == want && d.in_x((s, t)) == y_top.is_zero());
    }

    /// `(x, y) ∈ X` pushed forward by `φ_{θ^l}` for every `l`.
    fn check_claim2(&mut self, xy: Vertex) {
        let d = self.d;
        let b = d.base();
        let r = d.r();
        let mu_inv = b.inv(d.mu()).expect("mu nonzero");
        for l in 1..d.t() {
            let (s, t) = d.phi_theta(l, xy);
            let c = d.coords(s);
            let w: Vec<Fe> = (l..d.t()).map(|i| c[i]).chain((0..l).map(|i| b.mul(mu_inv, c[i]))).collect();
            let a = alpha(b, &w).expect("odd length");
            let ok = if l <= r {
                d.coeff(t, 2 * l - 1) == b.mul(d.mu(), a)
            } else {
                d.coeff(t, 2 * l - 2 * r - 2) == b.mul(b.square(d.mu()), a)
            };
            self.claim2.record(ok);
        }
    }

    /// `x = θ^{−l}s`: `x_i = s_{l+i}` for `i ≤ 2r − l`, `μx_i = s_{i−2r+l−1}` above.
    fn check_pullback(&mut self, s: Fe) {
        let d = self.d;
        let f = d.field();
        let b = d.base();
        let r = d.r();
        let c = d.coords(s);
        for l in 1..d.t() {
            let x = d.coords(f.div(s, d.theta_pow(l)).expect("theta nonzero"));
            let ok = (0..d.t()).all(|i| {
                if i + l <= 2 * r {
                    x[i] == c[l + i]
                } else {
                    b.mul(d.mu(), x[i]) == c[i + l - 2 * r - 1]
                }
            });
            self.pullback.record(ok);
        }
    }

    /// `(s, expected)` is in `Z`; `(s, other)` is not.
    fn check_claim3(&mut self, s: Fe, other: Fe) {
        let d = self.d;
        let e = d.expected_t_for_z(s);
        self.claim3.record(d.layer((s, e)) == Layer::Z);
        if other != e {
            self.claim3.record(d.layer((s, other)) != Layer::Z);
        }
    }

    fn check_claim4(&mut self, s: Fe, x: Fe) {
        let d = self.d;
        let f = d.field();
        let b = d.base();
        let cs = d.coords(s);
        let cx = d.coords(x);
        let w: Vec<Fe> = cs.iter().zip(&cx).map(|(&a, &c)| b.add(a, c)).collect();
        let direct = d.coords(f.square(f.add(s, x)));
        let ok = (0..d.t()).all(|l| d.tables().square_coeff(b, d.mu(), l, &w) == direct[l]);
        self.claim4.record(ok);

        // with t, y from the closed form, (s+x)² − t − y = −(s − x)² coordinatewise
        let lhs = f.sub(f.square(f.add(s, x)), f.add(d.expected_t_for_z(s), d.expected_t_for_z(x)));
        let z: Vec<Fe> = cs.iter().zip(&cx).map(|(&a, &c)| b.sub(a, c)).collect();
        let sys = d.residual_system(&z).expect("length t");
        let ok = d.coords(lhs).iter().zip(&sys).all(|(&a, &c)| a == b.neg(c));
        self.claim5_identity.record(ok);
    }

    /// Adjacent pairs in `Z` solve the system at `s − x`.
    fn check_claim5_pair(&mut self, s: Fe, x: Fe) {
        let d = self.d;
        let b = d.base();
        let cs = d.coords(s);
        let cx = d.coords(x);
        let z: Vec<Fe> = cs.iter().zip(&cx).map(|(&a, &c)| b.sub(a, c)).collect();
        let res = d.residual_system(&z).expect("length t");
        self.claim5.record(res.iter().all(|c| c.is_zero()));
    }

    fn report(self, mode: String, z_size: Option<usize>) -> OddClaims {
        let ok = [
            &self.claim1,
            &self.claim2,
            &self.pullback,
            &self.claim3,
            &self.claim4,
            &self.claim5_identity,
            &self.claim5,
        ]
        .iter()
        .all(|t| t.ok());
        OddClaims {
            q: self.d.base().order(),
            r: self.d.r(),
            mu: self.d.mu().0,
            mode,
            claim1_checked: self.claim1.checked,
            claim1_ok: self.claim1.ok(),
            claim2_checked: self.claim2.checked,
            claim2_ok: self.claim2.ok(),
            pullback_checked: self.pullback.checked,
            pullback_ok: self.pullback.ok(),
            claim3_checked: self.claim3.checked,
            claim3_ok: self.claim3.ok(),
            claim4_checked: self.claim4.checked,
            claim4_ok: self.claim4.ok(),
            claim5_identity_ok: self.claim5_identity.ok(),
            claim5_pairs: self.claim5.checked,
            claim5_ok: self.claim5.ok(),
            z_size,
            ok,
        }
    }
}

fn run(d: &OddDecomposition, mode: ClaimMode) -> Result<OddClaims, OddError> {
    let f = d.field();
    let mut ck = Checker::new(d);
    match mode {
        ClaimMode::Exhaustive => {
            let q = f.order();
            let mut z_by_s = vec![Vec::new(); q as usize];
            for s in f.elements() {
                ck.check_pullback(s);
                for t in f.elements() {
                    ck.check_claim1((s, t));
                    if d.in_x((s, t)) {
                        ck.check_claim2((s, t));
                        if d.layer((s, t)) == Layer::Z {
                            z_by_s[s.0 as usize].push(t);
                        }
                    }
                }
                for x in f.elements() {
                    ck.check_claim4(s, x);
                }
            }
            for s in f.elements() {
                let ok = z_by_s[s.0 as usize] == [d.expected_t_for_z(s)];
                ck.claim3.record(ok);
            }
            let z_size = z_by_s.iter().map(Vec::len).sum();
            for s in f.elements() {
                for &t in &z_by_s[s.0 as usize] {
                    for x in f.elements() {
                        let y = f.sub(f.square(f.add(s, x)), t);
                        if x != s && z_by_s[x.0 as usize].contains(&y) {
                            ck.check_claim5_pair(s, x);
                        }
                    }
                }
            }
            Ok(ck.report("exhaustive".into(), Some(z_size)))
        }
        ClaimMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = f.order();
            let pick = |rng: &mut ChaCha8Rng| Fe(rng.gen_range(0..n));
            let top = d.theta_pow(2 * d.r());
            for _ in 0..samples {
                let (s, t, x) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                ck.check_claim1((s, t));
                // force t into X by fixing its top coordinate; GF(q) sits at the low digit
                let shift = f.sub(Fe(d.alpha_of(s).0), Fe(d.coeff(t, 2 * d.r()).0));
                let tx = f.add(t, f.mul(shift, top));
                ck.check_claim1((s, tx));
                ck.check_claim2((s, tx));
                ck.check_pullback(s);
                ck.check_claim3(s, t);
                ck.check_claim4(s, x);
                let (es, ex) = (d.expected_t_for_z(s), d.expected_t_for_z(x));
                if s != x && f.square(f.add(s, x)) == f.add(es, ex) {
                    ck.check_claim5_pair(s, x);
                }
            }
            Ok(ck.report(format!("sampled:{samples}:seed={seed}"), None))
        }
    }
}
