use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A simple type: a base type or an arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(String),
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base(name.into())
    }

    pub fn arrow(from: Type, to: Type) -> Type {
        Type::Arrow(Arc::new(from), Arc::new(to))
    }

    /// Builds `args[0] -> ... -> args[n-1] -> target`.
    pub fn from_parts<'a, I>(args: I, target: Type) -> Type
    where
        I: IntoIterator<Item = &'a Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(target, |acc, a| Type::arrow(a.clone(), acc))
    }

    /// Argument types of the `γ₁ → … → γₘ → α` view.
    pub fn args(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Type::Arrow(a, b) = cur {
            out.push(a.as_ref());
            cur = b.as_ref();
        }
        out
    }

    /// The base type at the end of the arrow chain.
    pub fn target(&self) -> &Type {
        let mut cur = self;
        while let Type::Arrow(_, b) = cur {
            cur = b.as_ref();
        }
        cur
    }

    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Type::Arrow(_, b) = cur {
            n += 1;
            cur = b.as_ref();
        }
        n
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Type::Base(_))
    }

    /// The type left after consuming `n` arguments, if the arrow chain is long enough.
    pub fn drop_args(&self, n: usize) -> Option<&Type> {
        let mut cur = self;
        for _ in 0..n {
            match cur {
                Type::Arrow(_, b) => cur = b.as_ref(),
                Type::Base(_) => return None,
            }
        }
        Some(cur)
    }

    pub fn base_names(&self, out: &mut Vec<String>) {
        match self {
            Type::Base(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Type::Arrow(a, b) => {
                a.base_names(out);
                b.base_names(out);
            }
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) => write!(f, "{n}"),
            Type::Arrow(a, b) => {
                if a.is_base() {
                    write!(f, "{a}->{b}")
                } else {
                    write!(f, "({a})->{b}")
                }
            }
        }
    }
}

impl FromStr for Type {
    type Err = Error;

    fn from_str(s: &str) -> Result<Type> {
        crate::kernel::parse::parse_type(s)
    }
}

/// The constant that stands in for a ground term of type `ty`.
///
/// Base types give `c_a`; arrow types give `c_(a->a)`.
pub fn canonical_constant(ty: &Type) -> String {
    match ty {
        Type::Base(n) => format!("c_{n}"),
        Type::Arrow(..) => format!("c_({ty})"),
    }
}

/// Recovers the type named by a canonical constant.
pub fn canonical_constant_type(name: &str) -> Option<Type> {
    let rest = name.strip_prefix("c_")?;
    if rest.is_empty() {
        return None;
    }
    if let Some(inner) = rest.strip_prefix('(') {
        let inner = inner.strip_suffix(')')?;
        let ty: Type = inner.parse().ok()?;
        (!ty.is_base()).then_some(ty)
    } else if rest
        .chars()
        .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
    {
        Some(Type::base(rest))
    } else {
        None
    }
}

/// Typed constants, plus optional type declarations for free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    constants: BTreeMap<String, Type>,
    variables: BTreeMap<String, Type>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// `f : a -> a` and `a : a`.
    pub fn builtin() -> Signature {
        let a = Type::base("a");
        Signature::new()
            .with_constant("f", Type::arrow(a.clone(), a.clone()))
            .with_constant("a", a)
    }

    pub fn with_constant(mut self, name: impl Into<String>, ty: Type) -> Signature {
        self.constants.insert(name.into(), ty);
        self
    }

    pub fn with_variable(mut self, name: impl Into<String>, ty: Type) -> Signature {
        self.variables.insert(name.into(), ty);
        self
    }

    pub fn declare_constant(&mut self, name: impl Into<String>, ty: Type) {
        self.constants.insert(name.into(), ty);
    }

    /// Declared constants, or the canonical constant named after a type.
    pub fn constant_type(&self, name: &str) -> Option<Type> {
        self.constants
            .get(name)
            .cloned()
            .or_else(|| canonical_constant_type(name))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constant_type(name).is_some()
    }

    pub fn constants(&self) -> &BTreeMap<String, Type> {
        &self.constants
    }

    pub fn variables(&self) -> &BTreeMap<String, Type> {
        &self.variables
    }

    /// Always a constant of exactly `ty`; the same name for the same type.
    pub fn canonical_by_type(&self, ty: &Type) -> String {
        canonical_constant(ty)
    }

    /// Base type used when inference leaves a free variable's type open.
    pub fn default_base(&self) -> Type {
        let mut names = Vec::new();
        for ty in self.constants.values() {
            ty.base_names(&mut names);
        }
        if names.iter().any(|n| n == "a") || names.is_empty() {
            Type::base("a")
        } else {
            Type::base(names[0].clone())
        }
    }

    /// Parses `name : type` lines; `#` starts a comment. Uppercase names
    /// declare free-variable types, everything else is a constant.
    pub fn parse(text: &str) -> Result<Signature> {
        let mut sig = Signature::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, ty) = line.split_once(':').ok_or_else(|| Error::Syntax {
                offset: 0,
                message: format!("line {}: expected `name : type`", lineno + 1),
            })?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Syntax {
                    offset: 0,
                    message: format!("line {}: empty name", lineno + 1),
                });
            }
            let ty: Type = ty.trim().parse().map_err(|e| Error::Syntax {
                offset: 0,
                message: format!("line {}: {e}", lineno + 1),
            })?;
            if name.starts_with(|c: char| c.is_uppercase()) {
                sig.variables.insert(name.to_string(), ty);
            } else {
                sig.constants.insert(name.to_string(), ty);
            }
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Type {
        Type::base("a")
    }

    #[test]
    fn arrow_view() {
        let t: Type = "(a->a)->a->a".parse().unwrap();
        assert_eq!(t.arity(), 2);
        assert_eq!(t.args(), vec![&Type::arrow(a(), a()), &a()]);
        assert_eq!(t.target(), &a());
        assert_eq!(t.to_string(), "(a->a)->a->a");
    }

    #[test]
    fn arrow_is_right_associative() {
        let t: Type = "a->a->a".parse().unwrap();
        assert_eq!(t, Type::arrow(a(), Type::arrow(a(), a())));
    }

    #[test]
    fn canonical_constants_are_total_and_stable() {
        let sig = Signature::builtin();
        let ty: Type = "a->a".parse().unwrap();
        assert_eq!(sig.canonical_by_type(&ty), "c_(a->a)");
        assert_eq!(sig.canonical_by_type(&ty), sig.canonical_by_type(&ty));
        assert_eq!(sig.canonical_by_type(&a()), "c_a");
        assert_eq!(sig.constant_type("c_(a->a)"), Some(ty));
        assert_eq!(sig.constant_type("c_a"), Some(a()));
        assert_eq!(sig.constant_type("c_((a))"), None);
    }

    #[test]
    fn signature_file() {
        let sig = Signature::parse("# demo\nf : a -> a\na : a\nZ : a -> a -> a\n").unwrap();
        assert_eq!(sig.constant_type("f"), Some(Type::arrow(a(), a())));
        assert!(sig.variables().contains_key("Z"));
        assert!(Signature::parse("f a -> a").is_err());
    }
}
