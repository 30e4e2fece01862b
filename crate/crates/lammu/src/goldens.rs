//! Hand-built certificates for the worked examples: the SK reduction, μ
//! applied to a self-application, the fixed-point combinator and Peirce's
//! law.

use crate::parigot::{self, Encoding};
use crate::syntax::{parse_term, Term};
use crate::typing::{Basis, Derivation, Mode, NameContext};
use crate::types::{parse_any, Type};

/// A certificate and the system it is meant for.
#[derive(Clone, Debug)]
pub struct Golden {
    pub name: &'static str,
    pub mode: Mode,
    pub derivation: Derivation,
}

fn ty(s: &str) -> Type {
    parse_any(s).expect("fixed type")
}

fn term(s: &str) -> Term {
    parse_term(s).expect("fixed term")
}

fn env(entries: &[(&str, &Type)]) -> Basis {
    entries.iter().map(|(k, t)| (k.to_string(), (*t).clone())).collect()
}

fn ax(basis: &Basis, x: &str, ctx: &NameContext) -> Derivation {
    Derivation::ax(basis.clone(), x, ctx.clone())
}

fn omega(basis: &Basis, t: &str) -> Derivation {
    Derivation::omega(basis.clone(), term(t), NameContext::new())
}

fn abs(x: &str, d: Derivation) -> Derivation {
    Derivation::abs(x, d).expect("golden (Abs)")
}

fn app(f: Derivation, a: Derivation) -> Derivation {
    Derivation::app(f, a).expect("golden (App)")
}

/// `κ → ρ` with `κ = psi * w` and `ρ = psi`.
fn sk_arrow() -> Type {
    ty("psi * w -> psi")
}

/// `⊢ λb.λa.a : ω × (κ→ρ) × κ → ρ`, with `b`, `a` renamed to `y`, `z` as
/// on the leftmost-outermost path (`λba.a` for the default names).
pub fn sk_normal_form(b: &str, a: &str) -> Derivation {
    let w = Type::Omega;
    let ka = sk_arrow();
    let inner = env(&[(a, &ka), (b, &w)]);
    abs(b, abs(a, ax(&inner, a, &NameContext::new())))
}

/// `λa.λb.a : (κ→ρ) × ω × κ → ρ` under `outer`.
fn k_combinator(outer: &Basis) -> Derivation {
    let mut basis = outer.clone();
    basis.insert("a".into(), sk_arrow());
    basis.insert("b".into(), Type::Omega);
    abs("a", abs("b", ax(&basis, "a", &NameContext::new())))
}

/// `⊢ (λxyz.xz(yz))(λab.a) : ω × (κ→ρ) × κ → ρ`.
pub fn sk_redex() -> Derivation {
    let ka = sk_arrow();
    let xt = ty("(psi * w -> psi) * w * psi * w -> psi");
    let g = env(&[("x", &xt), ("y", &Type::Omega), ("z", &ka)]);
    let body = app(app(ax(&g, "x", &NameContext::new()), ax(&g, "z", &NameContext::new())), omega(&g, "y z"));
    let s = abs("x", abs("y", abs("z", body)));
    app(s, k_combinator(&Basis::new()))
}

/// Certificates at the same type for the terms on the leftmost-outermost
/// path from the SK redex to its normal form.
pub fn sk_path() -> Vec<Derivation> {
    let ka = sk_arrow();
    let g = env(&[("y", &Type::Omega), ("z", &ka)]);
    let no = NameContext::new();
    let step1 = abs("y", abs("z", app(app(k_combinator(&g), ax(&g, "z", &no)), omega(&g, "y z"))));
    let mut gb = g.clone();
    gb.insert("b".into(), Type::Omega);
    let step2 = abs("y", abs("z", app(abs("b", ax(&gb, "z", &no)), omega(&g, "y z"))));
    vec![sk_redex(), step1, step2, sk_normal_form("y", "z")]
}

/// The two certificates of `x : δ ∧ (δ×κ → ρ)` for `(μα.[α]x)x` and for its
/// reduct `μα.[α]xx`, both at `κ → ρ`.
pub fn mu_self_app(delta: &Type, kappa: &Type, rho: &Type) -> (Derivation, Derivation) {
    let fun = Type::arrow(Type::prod(delta.clone(), kappa.clone()), rho.clone());
    let x_ty = Type::inter(delta.clone(), fun.clone());
    let basis = env(&[("x", &x_ty)]);
    let no = NameContext::new();
    let cut = Type::prod(delta.clone(), kappa.clone());
    let pre_ctx = env(&[("a", &cut)]);
    let head = ax(&basis, "x", &pre_ctx).leq_to(fun.clone());
    let mu = Derivation::mu_abs("a", Derivation::tcmd("a", head).expect("golden (TCmd)")).expect("golden (MuAbs)");
    let pre = app(mu, ax(&basis, "x", &no).leq_to(delta.clone()));
    let post_ctx = env(&[("a", kappa)]);
    let xx = app(ax(&basis, "x", &post_ctx).leq_to(fun), ax(&basis, "x", &post_ctx).leq_to(delta.clone()));
    let post = Derivation::mu_abs("a", Derivation::tcmd("a", xx).expect("golden (TCmd)")).expect("golden (MuAbs)");
    (pre, post)
}

/// The same pair without self-application: `x : δ×κ → ρ, y : δ` types
/// `(μα.[α]x)y` and `μα.[α]xy` at `κ → ρ`.
pub fn mu_app(delta: &Type, kappa: &Type, rho: &Type) -> (Derivation, Derivation) {
    let fun = Type::arrow(Type::prod(delta.clone(), kappa.clone()), rho.clone());
    let basis = env(&[("x", &fun), ("y", delta)]);
    let cut = Type::prod(delta.clone(), kappa.clone());
    let mu = Derivation::mu_abs("a", Derivation::tcmd("a", ax(&basis, "x", &env(&[("a", &cut)]))).expect("golden (TCmd)"))
        .expect("golden (MuAbs)");
    let pre = app(mu, ax(&basis, "y", &NameContext::new()));
    let ctx = env(&[("a", kappa)]);
    let xy = app(ax(&basis, "x", &ctx), ax(&basis, "y", &ctx));
    let post = Derivation::mu_abs("a", Derivation::tcmd("a", xy).expect("golden (TCmd)")).expect("golden (MuAbs)");
    (pre, post)
}

/// `⊢ λf.(λx.f(xx))(λx.f(xx)) : (ω×ω → ψ) × ω → ψ` in the full system,
/// and the same type for its one-step reduct `λf.f((λx.f(xx))(λx.f(xx)))`.
pub fn fixpoint() -> (Derivation, Derivation) {
    let ft = ty("w * w -> psi");
    let outer = env(&[("f", &ft)]);
    let inner = env(&[("f", &ft), ("x", &Type::Omega)]);
    let half = abs("x", app(ax(&inner, "f", &NameContext::new()), omega(&inner, "x x")));
    let y = abs("f", app(half, omega(&outer, "\\x. f (x x)")));
    let reduct = abs("f", app(ax(&outer, "f", &NameContext::new()), omega(&outer, "(\\x. f (x x)) (\\x. f (x x))")));
    (y, reduct)
}

/// Every intersection-typed golden with the system it checks in.
pub fn all() -> Vec<Golden> {
    let mut out = Vec::new();
    let full = |name, derivation| Golden { name, mode: Mode::Full, derivation };
    out.push(full("sk-normal-form", sk_normal_form("b", "a")));
    out.push(full("sk-redex", sk_redex()));
    for (i, d) in sk_path().into_iter().enumerate().skip(1) {
        out.push(full(["", "sk-step-1", "sk-step-2", "sk-step-3"][i], d));
    }
    let (d, k, r) = (ty("psi * w -> psi"), ty("psi * w"), Type::psi());
    let (pre, post) = mu_self_app(&d, &k, &r);
    out.push(full("mu-self-app-redex", pre));
    out.push(full("mu-self-app-reduct", post));
    let (pre, post) = mu_app(&d, &k, &r);
    out.push(full("mu-app-redex", pre));
    out.push(full("mu-app-reduct", post));
    let kr = ty("(w -> psi) * w");
    let dr = Type::arrow(kr.clone(), Type::psi());
    let (pre, post) = mu_self_app(&dr, &kr, &Type::psi());
    out.push(Golden { name: "mu-self-app-redex-restricted", mode: Mode::Restricted, derivation: pre });
    out.push(Golden { name: "mu-self-app-reduct-restricted", mode: Mode::Restricted, derivation: post });
    let (y, reduct) = fixpoint();
    out.push(full("fixpoint", y));
    out.push(full("fixpoint-reduct", reduct));
    let p = parigot::peirce();
    out.push(full("peirce-translated-psi", parigot::translate_derivation(&p, &Encoding::psi()).expect("Peirce checks")));
    out.push(Golden {
        name: "peirce-translated",
        mode: Mode::Restricted,
        derivation: parigot::translate_derivation(&p, &Encoding::restricted()).expect("Peirce checks"),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::lo_step;
    use crate::typing::check_derivation;
    use crate::types::Lattice;

    #[test]
    fn goldens_check() {
        for g in all() {
            check_derivation(&g.derivation, g.mode, &Lattice::two_point())
                .unwrap_or_else(|v| panic!("{}: {v}\n{}", g.name, g.derivation.pretty()));
        }
    }

    #[test]
    fn sk_types_and_path() {
        let want = "w * (psi * w -> psi) * psi * w -> psi";
        let path = sk_path();
        for d in &path {
            assert_eq!(d.conclusion.ty.to_string(), want);
        }
        assert_eq!(sk_normal_form("b", "a").conclusion.subject.to_string(), "\\b. \\a. a");
        for w in path.windows(2) {
            let (next, _) = lo_step(w[0].conclusion.term().unwrap(), false).unwrap();
            assert_eq!(&next, w[1].conclusion.term().unwrap());
        }
    }

    #[test]
    fn mu_self_app_reduces_as_certified() {
        let (pre, post) = mu_self_app(&ty("psi * w -> psi"), &ty("psi * w"), &Type::psi());
        assert_eq!(pre.conclusion.subject.to_string(), "(mu a.[a] x) x");
        let (next, _) = lo_step(pre.conclusion.term().unwrap(), false).unwrap();
        assert_eq!(&next, post.conclusion.term().unwrap());
        assert_eq!(pre.conclusion.ty, post.conclusion.ty);
    }

    #[test]
    fn fixpoint_type() {
        let (y, reduct) = fixpoint();
        assert_eq!(y.conclusion.ty.to_string(), "(w * w -> psi) * w -> psi");
        assert_eq!(reduct.conclusion.ty, y.conclusion.ty);
        let (next, _) = lo_step(y.conclusion.term().unwrap(), false).unwrap();
        assert_eq!(&next, reduct.conclusion.term().unwrap());
    }
}
