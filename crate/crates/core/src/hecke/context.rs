use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hecke::HeckeElement;
use crate::named::NamedElement;

/// Resource caps for operations whose cost grows with `n!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Operations that enumerate all of `S_n`.
    pub max_enumeration_n: usize,
    /// Operations that build the class basis of the centre or other `n! x n!` systems.
    pub max_gamma_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_enumeration_n: 7, max_gamma_n: 5 }
    }
}

/// Degree, caps, execution strategy, and a memo of named elements for `H_n`.
#[derive(Debug)]
pub struct AlgebraContext {
    n: usize,
    caps: Caps,
    exec: Exec,
    named: RwLock<HashMap<NamedElement, Arc<HeckeElement>>>,
}

impl AlgebraContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_caps(n, Caps::default())
    }

    pub fn with_caps(n: usize, caps: Caps) -> Result<Self> {
        if n == 0 || n > crate::perm::MAX_DEGREE {
            return Err(Error::IndexOutOfRange { what: "degree n", index: n, min: 1, max: crate::perm::MAX_DEGREE });
        }
        Ok(AlgebraContext { n, caps, exec: Exec::default(), named: RwLock::new(HashMap::new()) })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn check_enumeration(&self, what: &'static str) -> Result<()> {
        if self.n > self.caps.max_enumeration_n {
            return Err(Error::ResourceLimit { what, n: self.n, cap: self.caps.max_enumeration_n });
        }
        Ok(())
    }

    pub fn check_gamma(&self, what: &'static str) -> Result<()> {
        if self.n > self.caps.max_gamma_n {
            return Err(Error::ResourceLimit { what, n: self.n, cap: self.caps.max_gamma_n });
        }
        Ok(())
    }

    pub(crate) fn memo_get(&self, id: NamedElement) -> Option<Arc<HeckeElement>> {
        self.named.read().unwrap().get(&id).cloned()
    }

    /// Memoised lookup; concurrent callers may both compute, the first insert wins.
    pub(crate) fn memo<F>(&self, id: NamedElement, build: F) -> Result<Arc<HeckeElement>>
    where
        F: FnOnce() -> Result<HeckeElement>,
    {
        if let Some(h) = self.named.read().unwrap().get(&id) {
            return Ok(h.clone());
        }
        let h = Arc::new(build()?);
        let mut map = self.named.write().unwrap();
        Ok(map.entry(id).or_insert(h).clone())
    }
}
