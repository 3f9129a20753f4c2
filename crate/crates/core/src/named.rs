//! Constructors for the distinguished elements of `H_n`: Murphy elements and
//! their variants, elementary symmetric functions in them, the trivial and
//! sign idempotent-like sums `x`, `y`, their modifications by the longest
//! word, and the Poincare polynomial.

use std::fmt;

use num_bigint::BigInt;

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{AlgebraContext, HeckeElement};
use crate::perm::Permutation;

/// Identifier of a named element of `H_n` (the degree comes from the context).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedElement {
    /// `L_{n,i}`
    Murphy(usize),
    /// `L~_{n,i}`
    MurphyTilde(usize),
    /// `calL_{n,i}`, defined by `calL_{n,1} = 1`, `calL_{n,i+1} = T~_{s_i} calL_{n,i} T~_{s_i}`.
    BraidMurphy(usize),
    /// `M~_{m,i} = rho_m(L~_{m,i})`, embedded in `H_n`.
    DualMurphy {
        m: usize,
        i: usize,
    },
    /// `e_{n,i}`
    ElemSym(usize),
    /// `e~_{n,i}`
    ElemSymTilde(usize),
    X,
    Y,
    XBar,
    YBar,
    /// `T_{w_n}`
    Longest,
    /// `calL_{n,1} calL_{n,2} ... calL_{n,n}`
    FullTwist,
}

impl NamedElement {
    pub fn build(self, ctx: &AlgebraContext) -> Result<HeckeElement> {
        match self {
            NamedElement::Murphy(i) => murphy(ctx, i),
            NamedElement::MurphyTilde(i) => murphy_normalized(ctx, i),
            NamedElement::BraidMurphy(i) => braid_murphy(ctx, i),
            NamedElement::DualMurphy { m, i } => dual_murphy(ctx, m, i),
            NamedElement::ElemSym(i) => elem_sym(ctx, i),
            NamedElement::ElemSymTilde(i) => elem_sym_normalized(ctx, i),
            NamedElement::X => x_elem(ctx),
            NamedElement::Y => y_elem(ctx),
            NamedElement::XBar => xbar(ctx),
            NamedElement::YBar => ybar(ctx),
            NamedElement::Longest => Ok(t_longest(ctx)),
            NamedElement::FullTwist => full_twist_product(ctx),
        }
    }

    /// Parses a CLI name with its integer arguments, e.g. `("Mt", [4, 3])`.
    pub fn from_name(name: &str, args: &[usize]) -> Result<Self> {
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Malformed(format!("{name} takes {k} argument(s), got {}", args.len())))
            }
        };
        let id = match name {
            "L" => arity(1).map(|_| NamedElement::Murphy(args[0]))?,
            "Lt" => arity(1).map(|_| NamedElement::MurphyTilde(args[0]))?,
            "calL" => arity(1).map(|_| NamedElement::BraidMurphy(args[0]))?,
            "Mt" => arity(2).map(|_| NamedElement::DualMurphy { m: args[0], i: args[1] })?,
            "e" => arity(1).map(|_| NamedElement::ElemSym(args[0]))?,
            "et" => arity(1).map(|_| NamedElement::ElemSymTilde(args[0]))?,
            "x" => arity(0).map(|_| NamedElement::X)?,
            "y" => arity(0).map(|_| NamedElement::Y)?,
            "xbar" => arity(0).map(|_| NamedElement::XBar)?,
            "ybar" => arity(0).map(|_| NamedElement::YBar)?,
            "Twn" => arity(0).map(|_| NamedElement::Longest)?,
            "fulltwist" => arity(0).map(|_| NamedElement::FullTwist)?,
            _ => return Err(Error::Malformed(format!("unknown named element {name:?}"))),
        };
        Ok(id)
    }
}

impl fmt::Display for NamedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedElement::Murphy(i) => write!(f, "L({i})"),
            NamedElement::MurphyTilde(i) => write!(f, "Lt({i})"),
            NamedElement::BraidMurphy(i) => write!(f, "calL({i})"),
            NamedElement::DualMurphy { m, i } => write!(f, "Mt({m},{i})"),
            NamedElement::ElemSym(i) => write!(f, "e({i})"),
            NamedElement::ElemSymTilde(i) => write!(f, "et({i})"),
            NamedElement::X => write!(f, "x"),
            NamedElement::Y => write!(f, "y"),
            NamedElement::XBar => write!(f, "xbar"),
            NamedElement::YBar => write!(f, "ybar"),
            NamedElement::Longest => write!(f, "Twn"),
            NamedElement::FullTwist => write!(f, "fulltwist"),
        }
    }
}

fn check_index(what: &'static str, i: usize, min: usize, max: usize) -> Result<()> {
    if i < min || i > max {
        return Err(Error::IndexOutOfRange { what, index: i, min, max });
    }
    Ok(())
}

/// `L_{n,i} = sum_{k<i} q^{-(i-1-k)} T_{(k i)}`; `L_{n,1} = 0`.
pub fn murphy(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    let n = ctx.n();
    check_index("Murphy index", i, 1, n)?;
    let h = ctx.memo(NamedElement::Murphy(i), || {
        let terms = (1..i).map(|k| {
            let t = Permutation::transposition(n, k, i).unwrap();
            (t, LaurentPoly::q_pow(-((i - 1 - k) as i32)))
        });
        HeckeElement::from_terms(n, terms)
    })?;
    Ok((*h).clone())
}

/// `L~_{n,i} = sum_{k<i} T~_{(k i)}`.
pub fn murphy_normalized(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    let n = ctx.n();
    check_index("Murphy index", i, 1, n)?;
    let h = ctx.memo(NamedElement::MurphyTilde(i), || {
        let coords = (1..i).map(|k| (Permutation::transposition(n, k, i).unwrap(), LaurentPoly::one()));
        Ok(HeckeElement::from_terms(n, coords)?.from_normalized())
    })?;
    Ok((*h).clone())
}

/// `calL_{n,i}` by its conjugation recursion.
pub fn braid_murphy(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    let n = ctx.n();
    check_index("braid Murphy index", i, 1, n)?;
    let h = ctx.memo(NamedElement::BraidMurphy(i), || {
        if i == 1 {
            return Ok(HeckeElement::one(n));
        }
        let prev = braid_murphy(ctx, i - 1)?;
        let s = i - 1;
        let conj = prev.left_mul_generator(s).right_mul_generator(s);
        Ok(conj.scale(&LaurentPoly::q_pow(-1)))
    })?;
    Ok((*h).clone())
}

/// `M~_{m,i} = rho_m(L~_{m,i})` computed in `H_m` and embedded in `H_n`.
pub fn dual_murphy(ctx: &AlgebraContext, m: usize, i: usize) -> Result<HeckeElement> {
    let n = ctx.n();
    check_index("dual Murphy degree", m, 1, n)?;
    check_index("dual Murphy index", i, 1, m)?;
    let h = ctx.memo(NamedElement::DualMurphy { m, i }, || {
        let sub = AlgebraContext::with_caps(m, ctx.caps())?.with_exec(ctx.exec());
        murphy_normalized(&sub, i)?.apply_rho().embed(n)
    })?;
    Ok((*h).clone())
}

/// Elementary symmetric functions `e_0, ..., e_{n-1}` of `family(2), ..., family(n)`
/// via `e_j(z_1..z_{k+1}) = e_j(z_1..z_k) + z_{k+1} e_{j-1}(z_1..z_k)`.
/// `family(1)` is zero for every Murphy family and is skipped.
fn elementary_by_recursion<F>(ctx: &AlgebraContext, family: F) -> Result<Vec<HeckeElement>>
where
    F: Fn(usize) -> Result<HeckeElement>,
{
    let n = ctx.n();
    let mut e = vec![HeckeElement::one(n)];
    for k in 2..=n {
        let z = family(k)?;
        let mut next = Vec::with_capacity(k);
        next.push(HeckeElement::one(n));
        for j in 1..k {
            let low = z.mul_with(&e[j - 1], ctx.exec())?;
            next.push(match e.get(j) {
                Some(same) => same + &low,
                None => low,
            });
        }
        e = next;
    }
    Ok(e)
}

/// `e_{n,i}`, `0 <= i <= n-1`, in the Murphy elements `L_{n,k}`.
pub fn elem_sym(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    check_index("elementary symmetric index", i, 0, ctx.n() - 1)?;
    if let Some(h) = ctx.memo_get(NamedElement::ElemSym(i)) {
        return Ok((*h).clone());
    }
    let all = elementary_by_recursion(ctx, |k| murphy(ctx, k))?;
    for (j, h) in all.into_iter().enumerate() {
        ctx.memo(NamedElement::ElemSym(j), || Ok(h))?;
    }
    elem_sym(ctx, i)
}

/// `e~_{n,i}`, `0 <= i <= n-1`, in the normalised Murphy elements.
pub fn elem_sym_normalized(ctx: &AlgebraContext, i: usize) -> Result<HeckeElement> {
    check_index("elementary symmetric index", i, 0, ctx.n() - 1)?;
    if let Some(h) = ctx.memo_get(NamedElement::ElemSymTilde(i)) {
        return Ok((*h).clone());
    }
    let all = elementary_by_recursion(ctx, |k| murphy_normalized(ctx, k))?;
    for (j, h) in all.into_iter().enumerate() {
        ctx.memo(NamedElement::ElemSymTilde(j), || Ok(h))?;
    }
    elem_sym_normalized(ctx, i)
}

/// `x = sum_w T_w`.
pub fn x_elem(ctx: &AlgebraContext) -> Result<HeckeElement> {
    ctx.check_enumeration("x")?;
    let n = ctx.n();
    let h = ctx.memo(NamedElement::X, || {
        HeckeElement::from_terms(n, Permutation::all(n).into_iter().map(|w| (w, LaurentPoly::one())))
    })?;
    Ok((*h).clone())
}

/// `y = sum_w (-q)^{l(w_n) - l(w)} T_w`.
pub fn y_elem(ctx: &AlgebraContext) -> Result<HeckeElement> {
    ctx.check_enumeration("y")?;
    let n = ctx.n();
    let top = longest_length(n);
    let h = ctx.memo(NamedElement::Y, || {
        let terms = Permutation::all(n).into_iter().map(|w| {
            let d = top - w.length();
            let sign = if d.is_multiple_of(2) { 1 } else { -1 };
            (w, LaurentPoly::monomial(2 * d as i32, BigInt::from(sign)))
        });
        HeckeElement::from_terms(n, terms)
    })?;
    Ok((*h).clone())
}

/// `x - T_{w_n}`.
pub fn xbar(ctx: &AlgebraContext) -> Result<HeckeElement> {
    let h = ctx.memo(NamedElement::XBar, || Ok(x_elem(ctx)? - t_longest(ctx)))?;
    Ok((*h).clone())
}

/// `y - T_{w_n}`.
pub fn ybar(ctx: &AlgebraContext) -> Result<HeckeElement> {
    let h = ctx.memo(NamedElement::YBar, || Ok(y_elem(ctx)? - t_longest(ctx)))?;
    Ok((*h).clone())
}

pub fn t_longest(ctx: &AlgebraContext) -> HeckeElement {
    HeckeElement::basis(Permutation::longest(ctx.n()))
}

/// `calL_{n,1} ... calL_{n,n}`.
pub fn full_twist_product(ctx: &AlgebraContext) -> Result<HeckeElement> {
    let n = ctx.n();
    let h = ctx.memo(NamedElement::FullTwist, || {
        let mut acc = HeckeElement::one(n);
        for i in 1..=n {
            acc = acc.mul_with(&braid_murphy(ctx, i)?, ctx.exec())?;
        }
        Ok(acc)
    })?;
    Ok((*h).clone())
}

/// `l(w_n) = n(n-1)/2`.
pub fn longest_length(n: usize) -> usize {
    n * (n - 1) / 2
}

/// `p(q) = sum_{w in S_n} q^{l(w)}`, by enumeration.
pub fn poincare(ctx: &AlgebraContext) -> Result<LaurentPoly> {
    ctx.check_enumeration("Poincare polynomial")?;
    Ok(LaurentPoly::from_terms(Permutation::all(ctx.n()).into_iter().map(|w| (2 * w.length() as i32, BigInt::from(1)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> AlgebraContext {
        AlgebraContext::new(n).unwrap()
    }

    fn t(n: usize, word: &[usize]) -> HeckeElement {
        HeckeElement::basis(Permutation::from_word(n, word).unwrap())
    }

    fn tt(n: usize, word: &[usize]) -> HeckeElement {
        HeckeElement::basis_tilde(Permutation::from_word(n, word).unwrap())
    }

    #[test]
    fn murphy_examples() {
        for n in 1..5 {
            assert!(murphy(&ctx(n), 1).unwrap().is_zero());
        }
        let l33 = murphy(&ctx(3), 3).unwrap();
        assert_eq!(l33, t(3, &[2]) + t(3, &[1, 2, 1]).scale(&LaurentPoly::q_pow(-1)));
        assert!(matches!(murphy(&ctx(3), 4), Err(Error::IndexOutOfRange { .. })));
        assert!(murphy(&ctx(3), 0).is_err());
    }

    #[test]
    fn normalized_murphy_is_scaled_murphy() {
        let c = ctx(5);
        for i in 1..=5 {
            let l = murphy(&c, i).unwrap().scale(&LaurentPoly::v_pow(-1));
            assert_eq!(murphy_normalized(&c, i).unwrap(), l);
        }
    }

    #[test]
    fn dual_murphy_examples() {
        let c = ctx(4);
        assert_eq!(dual_murphy(&c, 4, 3).unwrap(), tt(4, &[2, 3, 2]) + tt(4, &[2]));
        assert!(dual_murphy(&c, 4, 1).unwrap().is_zero());
        assert_eq!(dual_murphy(&c, 4, 2).unwrap(), tt(4, &[3]));
        assert_eq!(dual_murphy(&c, 4, 4).unwrap(), tt(4, &[1, 2, 3, 2, 1]) + tt(4, &[1, 2, 1]) + tt(4, &[1]));
        assert!(dual_murphy(&c, 3, 4).is_err());
        assert!(dual_murphy(&c, 5, 1).is_err());
    }

    #[test]
    fn dual_murphy_explicit_transpositions() {
        // M~_{n,i} = sum_{j = n-i+2}^{n} T~_{(j, n-i+1)}
        let n = 5;
        let c = ctx(n);
        for i in 1..=n {
            let expected = (n - i + 2..=n).fold(HeckeElement::zero(n), |acc, j| {
                acc + HeckeElement::basis_tilde(Permutation::transposition(n, j, n - i + 1).unwrap())
            });
            assert_eq!(dual_murphy(&c, n, i).unwrap(), expected);
        }
    }

    #[test]
    fn braid_murphy_examples() {
        let c = ctx(3);
        assert_eq!(braid_murphy(&c, 1).unwrap(), HeckeElement::one(3));
        let l2 = braid_murphy(&c, 2).unwrap();
        assert_eq!(l2, HeckeElement::one(3) + tt(3, &[1]).scale(&LaurentPoly::xi()));
        let via_tilde = murphy_normalized(&c, 2).unwrap().scale(&LaurentPoly::xi()) + HeckeElement::one(3);
        assert_eq!(l2, via_tilde);
    }

    #[test]
    fn elementary_examples() {
        let c = ctx(3);
        assert_eq!(elem_sym(&c, 0).unwrap(), HeckeElement::one(3));
        let e1 = elem_sym(&c, 1).unwrap();
        assert_eq!(e1, t(3, &[1]) + t(3, &[2]) + t(3, &[1, 2, 1]).scale(&LaurentPoly::q_pow(-1)));
        assert!(elem_sym(&c, 3).is_err());
        let c4 = ctx(4);
        for i in 0..4 {
            assert!(elem_sym(&c4, i).unwrap().is_central(), "e_(4,{i})");
        }
    }

    #[test]
    fn normalized_elementary_is_scaled() {
        let c = ctx(4);
        for i in 0..4 {
            let scaled = elem_sym(&c, i).unwrap().scale(&LaurentPoly::v_pow(-(i as i32)));
            assert_eq!(elem_sym_normalized(&c, i).unwrap(), scaled);
        }
    }

    #[test]
    fn x_y_and_poincare() {
        let c = ctx(3);
        let x = x_elem(&c).unwrap();
        assert_eq!(x.len(), 6);
        assert!(x.terms().all(|(_, c)| c.is_one()));
        let xb = xbar(&c).unwrap();
        assert_eq!(xb, t(3, &[]) + t(3, &[1]) + t(3, &[2]) + t(3, &[1, 2]) + t(3, &[2, 1]));
        assert_eq!(poincare(&ctx(2)).unwrap(), LaurentPoly::one() + LaurentPoly::q());
        // product formula prod_{i=1}^{n} (1 + q + ... + q^{i-1})
        for n in 1..=6 {
            let prod = (1..=n)
                .fold(LaurentPoly::one(), |acc, i| acc * LaurentPoly::from_pairs((0..i as i32).map(|k| (2 * k, 1))));
            assert_eq!(poincare(&ctx(n)).unwrap(), prod);
        }
        let y = y_elem(&c).unwrap();
        assert_eq!(y.coeff(&Permutation::identity(3)), -LaurentPoly::q_pow(3));
        assert!(y.coeff(&Permutation::longest(3)).is_one());
    }

    #[test]
    fn enumeration_cap() {
        let c = AlgebraContext::new(8).unwrap();
        assert!(matches!(x_elem(&c), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn names_round_trip() {
        for (name, args) in [("L", vec![2]), ("Mt", vec![4, 3]), ("xbar", vec![]), ("Twn", vec![])] {
            let id = NamedElement::from_name(name, &args).unwrap();
            assert!(id.to_string().starts_with(name));
        }
        assert!(NamedElement::from_name("L", &[]).is_err());
        assert!(NamedElement::from_name("nope", &[]).is_err());
    }
}
