use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gf::{is_prime, Field};
use crate::error::{Error, Result};

/// The constant field F_q, q = p^e, given by a prime and (for e > 1) a modulus over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Monic irreducible polynomial over F_p of degree e, low degree first. Present iff e > 1.
    pub modulus: Option<Vec<u32>>,
}

type Cache = Mutex<HashMap<FieldSpec, Arc<Field>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldSpec {
    pub fn prime(p: u32) -> FieldSpec {
        FieldSpec { p, e: 1, modulus: None }
    }

    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("e must be >= 1".into()));
        }
        let spec = match (e, modulus) {
            (1, None) => FieldSpec::prime(p),
            (1, Some(m)) if m == vec![0, 1] => FieldSpec::prime(p),
            (1, Some(_)) => {
                return Err(Error::InvalidArgument("a modulus is only given when e > 1".into()))
            }
            (_, None) => return Err(Error::InvalidArgument("e > 1 needs a modulus".into())),
            (_, Some(m)) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidArgument("modulus degree must equal e".into()));
                }
                FieldSpec { p, e, modulus: Some(m) }
            }
        };
        spec.field()?;
        Ok(spec)
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    /// The tabulated field F_q.
    pub fn field(&self) -> Result<Arc<Field>> {
        if let Some(f) = cache().lock().unwrap().get(self) {
            return Ok(f.clone());
        }
        let m = self.modulus.clone().unwrap_or_else(|| vec![0, 1]);
        let f = Arc::new(Field::new(self.p, m)?);
        cache().lock().unwrap().insert(self.clone(), f.clone());
        Ok(f)
    }

    /// Like `field` for specs already validated by `new`.
    pub fn fq(&self) -> Arc<Field> {
        self.field().expect("validated field spec")
    }
}
