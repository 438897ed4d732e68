use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::{make_tower, SmallField};
use crate::skewflag::{build_flag, FlagData, SkewError};

type Key = (u32, Vec<u32>, usize, Option<Vec<u32>>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<FlagData>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<FlagData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The flag with its default compatible basis for `F ⊂ L`, `[L : F] = n`,
/// built once per field, order and extension modulus.
pub fn flag_for(field: &SmallField, n: usize, modulus: Option<&[u32]>) -> Result<Arc<FlagData>, SkewError> {
    let key = (field.p(), field.modulus().to_vec(), n, modulus.map(<[u32]>::to_vec));
    if let Some(hit) = cache().lock().expect("flag cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    // built outside the lock; a concurrent duplicate build yields the same data
    let tower = make_tower(field.p(), field.e(), n, modulus, Some(field.modulus()))?;
    let flag = Arc::new(build_flag(&tower)?);
    let mut guard = cache().lock().expect("flag cache poisoned");
    Ok(guard.entry(key).or_insert(flag).clone())
}
