//! The verification suite: a fixed registry of claims, each checked exactly
//! for every applicable `n`.
//!
//! Items run concurrently; the report lists them in registry order and then
//! by `n`, so output is identical for identical options. Wall-clock times are
//! recorded only on request.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::center::{gamma_basis_cached, GammaBasis};
use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::{group_algebra_mul, left_mult_matrix, specialize_q1, AlgebraContext, Caps, HeckeElement};
use crate::linalg::rank_of_elements;
use crate::named::{
    braid_murphy, dual_murphy, elem_sym, elem_sym_normalized, full_twist_product, longest_length, murphy,
    murphy_normalized, poincare, t_longest, x_elem, xbar, y_elem, ybar,
};
use crate::perm::{Partition, Permutation};
use crate::report::{all_pass, Check};
use crate::sqrt::{
    catalog_checks_h3, catalog_checks_h4, catalog_h3, catalog_h4, even_word_centrality, h3_branch, h3_constraint_check,
    is_square_central, random_h3, sample_sqrt_h3, span_in_sqrt, verify_xbar_ybar_squares, Branch,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub seed: u64,
    pub caps: Caps,
    pub cache_dir: Option<PathBuf>,
    /// Restrict to these statement ids.
    pub only: Option<Vec<String>>,
    pub timings: bool,
    pub exec: Exec,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        VerifyOptions {
            n_max,
            seed: 0,
            caps: Caps::default(),
            cache_dir: None,
            only: None,
            timings: false,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub id: String,
    pub claim: String,
    pub n: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n_max: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub items: Vec<ItemResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let width = self.items.iter().map(|i| i.id.len()).max().unwrap_or(0);
        let mut s = String::new();
        for it in &self.items {
            let status = if it.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status}  {:<width$}  n={}  {}", it.id, it.n, it.claim));
            if let Some(ms) = it.millis {
                s.push_str(&format!("  [{ms} ms]"));
            }
            s.push('\n');
            if let Some(w) = &it.witness {
                s.push_str(&format!("      witness: {w}\n"));
            }
            if let Some(note) = &it.note {
                s.push_str(&format!("      note: {note}\n"));
            }
        }
        s.push_str(&format!(
            "summary: {} passed, {} failed (n_max = {}, seed = {})\n",
            self.passed, self.failed, self.n_max, self.seed
        ));
        s
    }
}

/// Success carries an optional note; failure carries a witness.
type Outcome = std::result::Result<Option<String>, String>;
type Runner = fn(&Session, usize, u64) -> Outcome;
/// Id, claim, n, runner.
type Job = (&'static str, &'static str, usize, Runner);

struct Statement {
    id: &'static str,
    claim: &'static str,
    min_n: usize,
    max_n: usize,
    gamma: bool,
    run: Runner,
}

const ANY: usize = usize::MAX;

fn registry() -> Vec<Statement> {
    let st = |id, claim, min_n, max_n, gamma, run| Statement { id, claim, min_n, max_n, gamma, run };
    vec![
        st("thm-murphy-commute", "the Murphy elements commute", 3, ANY, false, murphy_commute as Runner),
        st(
            "thm-murphy-symfn-central",
            "symmetric functions in the Murphy elements are central",
            3,
            ANY,
            false,
            murphy_symfn_central,
        ),
        st("rel-braid-murphy", "calL_{n,i} = xi L~_{n,i} + T~_1", 3, ANY, false, braid_murphy_relation),
        st("eq-full-twist", "T~_{w_n}^2 is the product of the calL_{n,i}", 3, ANY, false, full_twist),
        st("thm-longest-sq-normalized", "T~_{w_n}^2 = sum_i xi^i e~_{n,i}", 3, ANY, false, longest_sq_normalized),
        st("lemma-dualmurphy-1", "sum_i M~_{n,i} = sum_i L~_{n,i}", 3, ANY, false, dual_murphy_1),
        st("lemma-dualmurphy-2", "M~_{i,i} = M~_{i-1,i-1} + T~_{(1 i)}", 3, ANY, false, dual_murphy_2),
        st(
            "lemma-dualmurphy-3",
            "T~_{s_1...s_{n-1}} T~_{s_{n-1}...s_1} = T~_1 + xi M~_{n,n}",
            3,
            ANY,
            false,
            dual_murphy_3,
        ),
        st("lemma-dualmurphy-4", "L~_{n,n} e~_{n-1,i} + e~_{n-1,i+1} = e~_{n,i+1}", 3, ANY, false, dual_murphy_4),
        st("lemma-dualmurphy-5", "rho_n fixes every e~_{n,i}", 3, ANY, false, dual_murphy_5),
        st("lemma-xy-eigen", "T_s x = x T_s = q x and T_s y = y T_s = -y", 3, ANY, false, xy_eigen),
        st("lemma-xy-central", "x and y are central", 3, ANY, false, xy_central),
        st("lemma-xy-product", "x y = 0", 3, 5, false, xy_product),
        st("lemma-xy-squares", "x^2 = p(q) x and y^2 = (-1)^l p(q) y", 3, 5, false, xy_squares),
        st(
            "lemma-xy-gamma",
            "x = sum Gamma_lambda and y = sum (-q)^{l - l_lambda} Gamma_lambda",
            3,
            ANY,
            true,
            xy_gamma,
        ),
        st(
            "gamma-minimal-basis",
            "Gamma_lambda: central, class sum at q = 1, pinned on minimal elements, in Z[q, q^-1]",
            3,
            ANY,
            true,
            gamma_minimal,
        ),
        st(
            "prop-e-gamma",
            "e_{n,i} = sum_{l_lambda = i} Gamma_lambda (and the normalised form)",
            3,
            ANY,
            true,
            e_gamma,
        ),
        st(
            "cor-longest-sq-gamma-normalized",
            "T~_{w_n}^2 = sum xi^{l_lambda} Gamma~_lambda",
            3,
            ANY,
            true,
            longest_sq_gamma_normalized,
        ),
        st("cor-longest-sq-q", "T_{w_n}^2 = q^l sum (1 - q^-1)^{l_lambda} Gamma_lambda", 3, ANY, true, longest_sq_q),
        st("prop-sqrt-membership", "xbar, ybar, T_{w_n} lie in sqrtZ but not in Z", 3, 5, false, sqrt_membership),
        st(
            "lemma-cross-terms",
            "xbar T_{w_n}, ybar T_{w_n}, xbar ybar are central; xbar, ybar, T_{w_n} commute",
            3,
            5,
            false,
            cross_terms,
        ),
        st("cor-span-in-sqrt", "the span of xbar, ybar, T_{w_n} lies in sqrtZ", 3, 5, false, span_xyt),
        st("remark-xbar-minus-ybar", "xbar - ybar is central, xbar + ybar is not", 3, ANY, false, xbar_minus_ybar),
        st(
            "remark-sqrt-not-closed",
            "xbar + ybar T_{w_n} and h + h^2 (h in sqrtZ minus Z) are not in sqrtZ",
            3,
            5,
            false,
            sqrt_not_closed,
        ),
        st(
            "remark-even-exponent-words",
            "monomials in xbar, ybar, T_{w_n} of even degree <= 4 are central, odd ones in sqrtZ",
            3,
            5,
            false,
            even_words,
        ),
        st(
            "thm-xbar-ybar-squares",
            "closed forms of xbar^2 and ybar^2 in the Gamma and e bases",
            3,
            ANY,
            true,
            xbar_ybar_squares,
        ),
        st(
            "prop-not-zero-divisors",
            "left multiplication by xbar and by ybar has full rank",
            3,
            4,
            true,
            not_zero_divisors,
        ),
        st(
            "prop-h3-catalog",
            "H_3 catalog: sqrtZ minus Z, rank 5, eigenvectors, printed squares, span meets Z in <x, y>",
            3,
            3,
            true,
            h3_catalog,
        ),
        st(
            "prop-h3-quadratic-branches",
            "H_3: the sqrt branch lies in sqrtZ and the central branch is Z",
            3,
            3,
            true,
            h3_branches,
        ),
        st("remark-h3-r4-r5-span", "H_3: combinations of R4 and R5 square into Z", 3, 3, false, h3_r4_r5_span),
        st(
            "prop-h4-catalog",
            "H_4 catalog: R4, R5, R6 in sqrtZ minus Z, rank 6, commutation pattern",
            4,
            4,
            false,
            h4_catalog,
        ),
        st("oracle-q1-products", "random products agree with the group algebra at q = 1", 3, 5, false, oracle_products),
    ]
}

/// Ids of every registry statement, in report order.
pub fn statement_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
    ids.extend(DEGENERATE_IDS);
    ids
}

const DEGENERATE_IDS: [&str; 2] = ["degenerate-commutative", "degenerate-sqrt-is-everything"];

struct Session {
    ctxs: HashMap<usize, AlgebraContext>,
    gammas: HashMap<usize, OnceLock<std::result::Result<GammaBasis, String>>>,
    cache_dir: Option<PathBuf>,
}

impl Session {
    fn ctx(&self, n: usize) -> &AlgebraContext {
        &self.ctxs[&n]
    }

    fn gamma(&self, n: usize) -> std::result::Result<&GammaBasis, String> {
        self.gammas[&n]
            .get_or_init(|| gamma_basis_cached(self.ctx(n), self.cache_dir.as_deref()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| format!("class basis unavailable: {e}"))
    }
}

fn item_seed(seed: u64, id: &str, n: usize) -> u64 {
    let d = Sha256::digest(format!("{seed}:{id}:{n}").as_bytes());
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerificationReport> {
    let caps = opts.caps;
    if opts.n_max > caps.max_enumeration_n {
        return Err(Error::ResourceLimit { what: "verification", n: opts.n_max, cap: caps.max_enumeration_n });
    }
    let known = statement_ids();
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|id| !known.contains(&id.as_str())) {
            return Err(Error::UnknownStatement(bad.clone()));
        }
    }
    let wanted = |id: &str| opts.only.as_ref().is_none_or(|o| o.iter().any(|x| x == id));

    let mut ctxs = HashMap::new();
    let mut gammas = HashMap::new();
    for n in 1..=opts.n_max.max(1) {
        ctxs.insert(n, AlgebraContext::with_caps(n, caps)?.with_exec(opts.exec));
        gammas.insert(n, OnceLock::new());
    }
    let session = Session { ctxs, gammas, cache_dir: opts.cache_dir.clone() };

    let mut jobs: Vec<Job> = Vec::new();
    if opts.n_max <= 2 {
        let n = opts.n_max.max(1);
        let claims: [(&'static str, &'static str, Runner); 2] = [
            (DEGENERATE_IDS[0], "H_n is commutative for n <= 2", degenerate_commutative),
            (DEGENERATE_IDS[1], "sqrtZ = H_n for n <= 2", degenerate_sqrt),
        ];
        for (id, claim, run) in claims {
            if wanted(id) {
                jobs.push((id, claim, n, run));
            }
        }
    } else {
        for st in registry() {
            if !wanted(st.id) {
                continue;
            }
            let mut hi = st.max_n.min(opts.n_max);
            if st.gamma {
                hi = hi.min(caps.max_gamma_n);
            }
            for n in st.min_n..=hi {
                jobs.push((st.id, st.claim, n, st.run));
            }
        }
    }

    let items = opts.exec.map(&jobs, |&(id, claim, n, run)| {
        let start = Instant::now();
        let out = run(&session, n, item_seed(opts.seed, id, n));
        let millis = opts.timings.then(|| start.elapsed().as_millis() as u64);
        let (pass, witness, note) = match out {
            Ok(note) => (true, None, note),
            Err(w) => (false, Some(w), None),
        };
        ItemResult { id: id.to_string(), claim: claim.to_string(), n, pass, witness, note, millis }
    });
    let passed = items.iter().filter(|i| i.pass).count();
    Ok(VerificationReport { n_max: opts.n_max, seed: opts.seed, passed, failed: items.len() - passed, items })
}

// ---- helpers ----

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(None)
    } else {
        Err(witness())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn eq_or(what: &str, got: &HeckeElement, want: &HeckeElement) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        let diff = got - want;
        Err(format!("{what}: difference {}", truncate(&diff.to_text())))
    }
}

fn truncate(s: &str) -> String {
    const MAX: usize = 300;
    if s.len() <= MAX {
        s.to_string()
    } else {
        let mut end = MAX;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}... ({} chars)", &s[..end], s.len())
    }
}

fn xi_pow(k: usize) -> LaurentPoly {
    LaurentPoly::xi().pow(k as u32)
}

fn checks_outcome(checks: Vec<Check>) -> Outcome {
    let notes: Vec<String> = checks.iter().filter_map(|c| c.note.as_ref().map(|n| format!("{}: {n}", c.id))).collect();
    let note = (!notes.is_empty()).then(|| notes.join("; "));
    if all_pass(&checks) {
        Ok(note)
    } else {
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} ({})", c.id, c.witness.clone().unwrap_or_default()))
            .collect();
        Err(failed.join("; "))
    }
}

/// A random element with 1 to `max_terms` terms and small Laurent coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, perms: &[Permutation], max_terms: usize) -> HeckeElement {
    let n = perms[0].degree();
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let w = perms.choose(rng).expect("non-empty").clone();
        let c = LaurentPoly::from_terms(
            (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(-4..=4), BigInt::from(rng.gen_range(-3..=3)))),
        );
        (w, c)
    });
    HeckeElement::from_terms(n, terms).expect("degree n")
}

// ---- degenerate n <= 2 ----

fn degenerate_commutative(s: &Session, n: usize, _: u64) -> Outcome {
    let basis: Vec<HeckeElement> = Permutation::all(n).into_iter().map(HeckeElement::basis).collect();
    let _ = s;
    for a in &basis {
        for b in &basis {
            if a * b != b * a {
                return Err(format!("{a} and {b} do not commute"));
            }
        }
    }
    Ok(Some("every element is central, so no sqrtZ minus Z items apply".into()))
}

fn degenerate_sqrt(_: &Session, n: usize, _: u64) -> Outcome {
    let all_central = Permutation::all(n).into_iter().all(|w| HeckeElement::basis(w).is_central());
    ensure(all_central, || "a basis element is not central".into())
}

// ---- Murphy elements ----

fn murphy_commute(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let l: Vec<HeckeElement> = (1..=n).map(|i| murphy(ctx, i)).collect::<Result<_>>().map_err(err)?;
    for i in 0..n {
        for j in i + 1..n {
            if &l[i] * &l[j] != &l[j] * &l[i] {
                return Err(format!("L({}) L({}) != L({}) L({})", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    Ok(None)
}

fn murphy_symfn_central(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    for i in 0..n {
        let e = elem_sym(ctx, i).map_err(err)?;
        let et = elem_sym_normalized(ctx, i).map_err(err)?;
        if !e.is_central() || !et.is_central() {
            return Err(format!("e({i}) or et({i}) is not central"));
        }
    }
    Ok(None)
}

fn braid_murphy_relation(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    for i in 1..=n {
        let lhs = braid_murphy(ctx, i).map_err(err)?;
        let rhs = murphy_normalized(ctx, i).map_err(err)?.scale(&LaurentPoly::xi()) + HeckeElement::one(n);
        eq_or(&format!("calL({i})"), &lhs, &rhs)?;
    }
    Ok(None)
}

fn tilde_longest_square(ctx: &AlgebraContext) -> Result<HeckeElement> {
    let tw = HeckeElement::basis_tilde(Permutation::longest(ctx.n()));
    tw.mul_with(&tw, ctx.exec())
}

fn full_twist(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let lhs = full_twist_product(ctx).map_err(err)?;
    eq_or("product of calL", &lhs, &tilde_longest_square(ctx).map_err(err)?)?;
    Ok(None)
}

fn longest_sq_normalized(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let mut rhs = HeckeElement::zero(n);
    for i in 0..n {
        rhs = rhs + elem_sym_normalized(ctx, i).map_err(err)?.scale(&xi_pow(i));
    }
    eq_or("T~_w^2", &tilde_longest_square(ctx).map_err(err)?, &rhs)?;
    Ok(None)
}

fn dual_murphy_1(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let mut m = HeckeElement::zero(n);
    let mut l = HeckeElement::zero(n);
    for i in 1..=n {
        m = m + dual_murphy(ctx, n, i).map_err(err)?;
        l = l + murphy_normalized(ctx, i).map_err(err)?;
    }
    eq_or("sum M~ - sum L~", &m, &l)?;
    Ok(None)
}

fn dual_murphy_2(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    for i in 2..=n {
        let lhs = dual_murphy(ctx, i, i).map_err(err)?;
        let t = HeckeElement::basis_tilde(Permutation::transposition(n, 1, i).map_err(err)?);
        let rhs = dual_murphy(ctx, i - 1, i - 1).map_err(err)? + t;
        eq_or(&format!("M~({i},{i})"), &lhs, &rhs)?;
    }
    Ok(None)
}

fn dual_murphy_3(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let up: Vec<usize> = (1..n).collect();
    let down: Vec<usize> = (1..n).rev().collect();
    let a = HeckeElement::basis_tilde(Permutation::from_word(n, &up).map_err(err)?);
    let b = HeckeElement::basis_tilde(Permutation::from_word(n, &down).map_err(err)?);
    let rhs = HeckeElement::one(n) + dual_murphy(ctx, n, n).map_err(err)?.scale(&LaurentPoly::xi());
    eq_or("T~_{s_1..s_{n-1}} T~_{s_{n-1}..s_1}", &(&a * &b), &rhs)?;
    Ok(None)
}

/// `e~_{n,i}` as the sum over `i`-subsets of products of `L~_{n,2..n}`.
pub fn elem_sym_by_subsets(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    let n = ctx.n();
    let l: Vec<HeckeElement> = (2..=n).map(|k| murphy_normalized(ctx, k)).collect::<Result<_>>()?;
    let mut acc = HeckeElement::zero(n);
    for mask in 0u32..(1 << l.len()) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let mut p = HeckeElement::one(n);
        for (k, lk) in l.iter().enumerate() {
            if mask & (1 << k) != 0 {
                p = p.mul_with(lk, ctx.exec())?;
            }
        }
        acc = acc + p;
    }
    Ok(acc)
}

fn dual_murphy_4(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let small = s.ctx(n - 1);
    let k = n - 1;
    let lnn = murphy_normalized(ctx, n).map_err(err)?;
    let e_small: Vec<HeckeElement> =
        (0..k).map(|i| elem_sym_normalized(small, i).and_then(|e| e.embed(n))).collect::<Result<_>>().map_err(err)?;
    for i in 0..k {
        let mut lhs = &lnn * &e_small[i];
        if i + 1 < k {
            lhs = lhs + &e_small[i + 1];
        }
        eq_or(&format!("recursion at i = {i}"), &lhs, &elem_sym_normalized(ctx, i + 1).map_err(err)?)?;
    }
    for i in 0..n {
        let oracle = elem_sym_by_subsets(ctx, i).map_err(err)?;
        eq_or(&format!("e~({i}) against subset expansion"), &elem_sym_normalized(ctx, i).map_err(err)?, &oracle)?;
    }
    Ok(None)
}

fn dual_murphy_5(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    for i in 0..n {
        let e = elem_sym_normalized(ctx, i).map_err(err)?;
        eq_or(&format!("rho(e~({i}))"), &e.apply_rho(), &e)?;
    }
    Ok(None)
}

// ---- x and y ----

fn xy_eigen(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let x = x_elem(ctx).map_err(err)?;
    let y = y_elem(ctx).map_err(err)?;
    let qx = x.scale(&LaurentPoly::q());
    let my = -y.clone();
    for i in 1..n {
        eq_or(&format!("T_s{i} x"), &x.left_mul_generator(i), &qx)?;
        eq_or(&format!("x T_s{i}"), &x.right_mul_generator(i), &qx)?;
        eq_or(&format!("T_s{i} y"), &y.left_mul_generator(i), &my)?;
        eq_or(&format!("y T_s{i}"), &y.right_mul_generator(i), &my)?;
    }
    Ok(None)
}

fn xy_central(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let x = x_elem(ctx).map_err(err)?;
    let y = y_elem(ctx).map_err(err)?;
    ensure(x.is_central() && y.is_central(), || "x or y is not central".into())
}

fn xy_product(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let x = x_elem(ctx).map_err(err)?;
    let y = y_elem(ctx).map_err(err)?;
    let xy = x.mul_with(&y, ctx.exec()).map_err(err)?;
    ensure(xy.is_zero(), || format!("xy has {} terms", xy.len()))
}

fn xy_squares(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let p = poincare(ctx).map_err(err)?;
    let x = x_elem(ctx).map_err(err)?;
    let y = y_elem(ctx).map_err(err)?;
    eq_or("x^2", &x.mul_with(&x, ctx.exec()).map_err(err)?, &x.scale(&p))?;
    let sign = if longest_length(n).is_multiple_of(2) { 1 } else { -1 };
    eq_or("y^2", &y.mul_with(&y, ctx.exec()).map_err(err)?, &y.scale(&p.scale(&BigInt::from(sign))))?;
    Ok(None)
}

fn xy_gamma(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let gb = s.gamma(n)?;
    let l = longest_length(n);
    eq_or("x", &x_elem(ctx).map_err(err)?, &gb.combine(|_| LaurentPoly::one()))?;
    let want = gb.combine(|lam| (-LaurentPoly::q()).pow((l - lam.min_length()) as u32));
    eq_or("y", &y_elem(ctx).map_err(err)?, &want)?;
    Ok(None)
}

// ---- class basis ----

fn gamma_minimal(s: &Session, n: usize, _: u64) -> Outcome {
    let gb = s.gamma(n)?;
    gb.check_invariants().map_err(err)?;
    ensure(gb.elements().len() == Partition::all(n).len(), || "wrong number of basis elements".into())
}

fn e_gamma(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let gb = s.gamma(n)?;
    for i in 0..n {
        eq_or(&format!("e({i})"), &elem_sym(ctx, i).map_err(err)?, &gb.sum_with_min_length(i))?;
        let want = gb
            .elements()
            .iter()
            .filter(|(p, _)| p.min_length() == i)
            .fold(HeckeElement::zero(n), |acc, (p, _)| acc + gb.normalized(p).expect("present"));
        eq_or(&format!("e~({i})"), &elem_sym_normalized(ctx, i).map_err(err)?, &want)?;
    }
    Ok(None)
}

fn longest_sq_gamma_normalized(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let gb = s.gamma(n)?;
    let want = gb.elements().iter().fold(HeckeElement::zero(n), |acc, (p, _)| {
        acc + gb.normalized(p).expect("present").scale(&xi_pow(p.min_length()))
    });
    eq_or("T~_w^2", &tilde_longest_square(ctx).map_err(err)?, &want)?;
    Ok(None)
}

fn longest_sq_q(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let gb = s.gamma(n)?;
    let l = longest_length(n) as i32;
    let one_minus = LaurentPoly::one() - LaurentPoly::q_pow(-1);
    let want = gb.combine(|lam| &LaurentPoly::q_pow(l) * &one_minus.pow(lam.min_length() as u32));
    let tw = t_longest(ctx);
    eq_or("T_w^2", &tw.mul_with(&tw, ctx.exec()).map_err(err)?, &want)?;
    if n == 3 {
        return Ok(Some(
            "the displayed n = 3 expansion Gamma(1,1,1) + (1 - q^-1) Gamma(2,1) + (1 - q^-1)^2 Gamma(3) \
             omits the overall factor q^3; it is the normalised square T~_{w_3}^2"
                .into(),
        ));
    }
    Ok(None)
}

// ---- square roots ----

fn xyt(s: &Session, n: usize) -> std::result::Result<[HeckeElement; 3], String> {
    let ctx = s.ctx(n);
    Ok([xbar(ctx).map_err(err)?, ybar(ctx).map_err(err)?, t_longest(ctx)])
}

fn sqrt_membership(s: &Session, n: usize, _: u64) -> Outcome {
    let names = ["xbar", "ybar", "T_w"];
    for (name, h) in names.iter().zip(xyt(s, n)?) {
        if !is_square_central(&h) || h.is_central() {
            return Err(format!("{name} is not in sqrtZ minus Z"));
        }
    }
    Ok(None)
}

fn cross_terms(s: &Session, n: usize, _: u64) -> Outcome {
    let [xb, yb, tw] = xyt(s, n)?;
    let pairs = [("xbar", &xb, "T_w", &tw), ("ybar", &yb, "T_w", &tw), ("xbar", &xb, "ybar", &yb)];
    for (an, a, bn, b) in pairs {
        let ab = a * b;
        if !ab.is_central() {
            return Err(format!("{an} {bn} is not central"));
        }
        if ab != b * a {
            return Err(format!("{an} and {bn} do not commute"));
        }
    }
    Ok(None)
}

fn span_xyt(s: &Session, n: usize, _: u64) -> Outcome {
    let gens = xyt(s, n)?;
    ensure(span_in_sqrt(&gens, s.ctx(n).exec()).map_err(err)?, || "some combination squares outside Z".into())
}

fn xbar_minus_ybar(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let xb = xbar(ctx).map_err(err)?;
    let yb = ybar(ctx).map_err(err)?;
    ensure((&xb - &yb).is_central(), || "xbar - ybar is not central".into())?;
    ensure(!(&xb + &yb).is_central(), || "xbar + ybar is central".into())
}

fn sqrt_not_closed(s: &Session, n: usize, _: u64) -> Outcome {
    let [xb, yb, tw] = xyt(s, n)?;
    let mixed = &xb + &(&yb * &tw);
    ensure(!is_square_central(&mixed), || "xbar + ybar T_w is in sqrtZ".into())?;
    let mut roots = vec![("xbar".to_string(), xb), ("ybar".to_string(), yb), ("T_w".to_string(), tw)];
    let cat = match n {
        3 => catalog_h3().map_err(err)?,
        4 => catalog_h4().map_err(err)?,
        _ => Vec::new(),
    };
    roots.extend(cat.into_iter().map(|(k, h)| (format!("catalog {k}"), h)));
    for (name, h) in roots {
        if !is_square_central(&h) || h.is_central() {
            continue;
        }
        let sum = &h + &(&h * &h);
        if is_square_central(&sum) {
            return Err(format!("h + h^2 is in sqrtZ for h = {name}"));
        }
    }
    Ok(None)
}

fn even_words(s: &Session, n: usize, _: u64) -> Outcome {
    let gens = xyt(s, n)?;
    let checks = even_word_centrality(&gens, 4, s.ctx(n).exec()).map_err(err)?;
    if let Some(bad) = checks.iter().find(|c| !c.holds()) {
        return Err(format!(
            "monomial with exponents {:?}: central {}, in sqrtZ {}",
            bad.exponents, bad.central, bad.in_sqrt
        ));
    }
    let xyt_mono = checks.iter().find(|c| c.exponents == [1, 1, 1]).expect("degree 3 present");
    ensure(!xyt_mono.central, || "xbar ybar T_w is central".into())
}

fn xbar_ybar_squares(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let gb = s.gamma(n)?;
    verify_xbar_ybar_squares(ctx, gb).map_err(err)?;
    Ok(None)
}

fn not_zero_divisors(s: &Session, n: usize, _: u64) -> Outcome {
    let ctx = s.ctx(n);
    let size = Permutation::all(n).len();
    for (name, h) in [("xbar", xbar(ctx).map_err(err)?), ("ybar", ybar(ctx).map_err(err)?)] {
        let r = left_mult_matrix(ctx, &h).map_err(err)?.rank(ctx.exec());
        if r != size {
            return Err(format!("left multiplication by {name} has rank {r} < {size}"));
        }
    }
    Ok(None)
}

fn h3_catalog(s: &Session, n: usize, _: u64) -> Outcome {
    checks_outcome(catalog_checks_h3(s.gamma(n)?).map_err(err)?)
}

fn h3_branches(s: &Session, n: usize, seed: u64) -> Outcome {
    let gb = s.gamma(n)?;
    for k in 0..100u64 {
        let h = sample_sqrt_h3(seed.wrapping_add(k));
        if !is_square_central(&h) {
            return Err(format!("sample {k} is not in sqrtZ: {h}"));
        }
        if h3_branch(&h).map_err(err)? == Branch::Neither {
            return Err(format!("sample {k} is on neither branch"));
        }
    }
    for k in 0..100u64 {
        h3_constraint_check(&random_h3(seed.wrapping_add(1000 + k))).map_err(err)?;
    }
    let one = LaurentPoly::one();
    let z = LaurentPoly::zero();
    let central = [
        crate::sqrt::central_branch_element(&one, &z, &z),
        crate::sqrt::central_branch_element(&z, &one, &z),
        crate::sqrt::central_branch_element(&z, &z, &one),
    ];
    let gammas: Vec<HeckeElement> = gb.elements().iter().map(|(_, h)| h.clone()).collect();
    let both: Vec<HeckeElement> = central.iter().chain(&gammas).cloned().collect();
    let exec = s.ctx(n).exec();
    let (rb, rg, rboth) =
        (rank_of_elements(&central, exec), rank_of_elements(&gammas, exec), rank_of_elements(&both, exec));
    ensure(rb == 3 && rg == 3 && rboth == 3, || format!("ranks: branch {rb}, Gamma {rg}, together {rboth}"))
}

fn h3_r4_r5_span(s: &Session, n: usize, _: u64) -> Outcome {
    let cat = catalog_h3().map_err(err)?;
    let r: Vec<HeckeElement> = cat.iter().filter(|(k, _)| *k == "R4" || *k == "R5").map(|(_, h)| h.clone()).collect();
    let ok = span_in_sqrt(&r, s.ctx(n).exec()).map_err(err)?;
    ensure(ok, || "R4 R5 + R5 R4 is not central".into())?;
    Ok(Some(
        "the text remarks that the span of R4 and R5 is not in sqrtZ; both satisfy the linear sqrt-branch \
         relation and R4^2, R5^2, R4 R5 + R5 R4 are all central, so every combination is a square root"
            .into(),
    ))
}

fn h4_catalog(_: &Session, _: usize, _: u64) -> Outcome {
    checks_outcome(catalog_checks_h4().map_err(err)?)
}

fn oracle_products(_: &Session, n: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = Permutation::all(n);
    let count = if n == 4 { 1000 } else { 200 };
    for k in 0..count {
        let a = random_element(&mut rng, &perms, 4);
        let b = random_element(&mut rng, &perms, 4);
        let lhs = specialize_q1(&(&a * &b));
        let rhs = group_algebra_mul(&specialize_q1(&a), &specialize_q1(&b)).map_err(err)?;
        if lhs != rhs {
            return Err(format!("product {k}: ({a}) * ({b})"));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_passes_and_is_deterministic() {
        let mut opts = VerifyOptions::new(3);
        opts.seed = 7;
        let a = run_verify(&opts).unwrap();
        assert!(a.all_pass(), "{}", a.to_text());
        assert!(a.items.iter().any(|i| i.id == "prop-h3-catalog"));
        opts.exec = Exec::Sequential;
        let b = run_verify(&opts).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn degenerate_and_errors() {
        let r = run_verify(&VerifyOptions::new(2)).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.items.len(), 2);
        let mut opts = VerifyOptions::new(3);
        opts.only = Some(vec!["no-such-claim".into()]);
        assert_eq!(run_verify(&opts), Err(Error::UnknownStatement("no-such-claim".into())));
        assert!(matches!(run_verify(&VerifyOptions::new(8)), Err(Error::ResourceLimit { .. })));
        opts.only = Some(vec!["thm-murphy-commute".into()]);
        let r = run_verify(&opts).unwrap();
        assert_eq!(r.items.len(), 1);
    }

    #[test]
    fn ids_are_unique() {
        let ids = statement_ids();
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
    }
}
