//! Named example systems.
//!
//! - `odometer`: `a = (a, e)σ`, the binary adding machine.
//! - `coe-pair` / `coe-pair-G`: `a1 = (a1, e)σ`, `a2 = (a1, e)`.
//! - `coe-pair-H`: `a1 = (a1, e)σ` alone.
//! - `pink:s,r` (also `pink(s,r)`), `2 <= s < r`: `a1 = σ`, `a2 = (a1, e)`,
//!   `a_i = (a_{i-1}, e)` for `3 <= i <= s` and `s+2 <= i <= r`, and
//!   `a_{s+1} = (a_s, a_r)`. The definition `a2 = (a1, e)` is an
//!   interpretation: the recursion only fixes `a_i` from `i = 3` on.
//! - `pink2s:s` (also `pink2s(s)`): `pink:s,2s`.

use crate::error::{Error, Result};

use super::AutomatonSystem;

pub const BUILTIN_NAMES: &[&str] = &["odometer", "coe-pair", "coe-pair-G", "coe-pair-H", "pink:s,r", "pink2s:s"];

/// Looks up a builtin system by name, or `None` if the name is not a builtin.
pub fn builtin(name: &str) -> Option<Result<AutomatonSystem>> {
    let name = name.trim();
    let text = match name {
        "odometer" => Ok("degree = 2\ngen a = [1,0] (a, e)\n".to_string()),
        "coe-pair" | "coe-pair-G" => Ok("degree = 2\ngen a1 = [1,0] (a1, e)\ngen a2 = [0,1] (a1, e)\n".to_string()),
        "coe-pair-H" => Ok("degree = 2\ngen a1 = [1,0] (a1, e)\n".to_string()),
        _ => {
            if let Some(args) = family_args(name, "pink2s") {
                match args.as_slice() {
                    [s] => pink_text(*s, 2 * *s),
                    _ => Err(Error::Invalid(format!("`{name}`: pink2s takes one parameter s"))),
                }
            } else {
                let args = family_args(name, "pink")?;
                match args.as_slice() {
                    [s, r] => pink_text(*s, *r),
                    _ => Err(Error::Invalid(format!("`{name}`: pink takes two parameters s,r"))),
                }
            }
        }
    };
    Some(text.and_then(|t| AutomatonSystem::parse(&t)))
}

/// Parses `family:a,b` or `family(a,b)` into its integer arguments.
fn family_args(name: &str, family: &str) -> Option<Vec<usize>> {
    let rest = name.strip_prefix(family)?;
    let inner = if let Some(r) = rest.strip_prefix(':') {
        r
    } else {
        rest.strip_prefix('(')?.strip_suffix(')')?
    };
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

fn pink_text(s: usize, r: usize) -> Result<String> {
    if s < 2 || r <= s {
        return Err(Error::Invalid(format!("pink family needs 2 <= s < r, got s={s}, r={r}")));
    }
    let mut text = String::from("degree = 2\ngen a1 = [1,0] (e, e)\n");
    for i in 2..=r {
        if i == s + 1 {
            text.push_str(&format!("gen a{i} = [0,1] (a{s}, a{r})\n"));
        } else {
            text.push_str(&format!("gen a{i} = [0,1] (a{}, e)\n", i - 1));
        }
    }
    Ok(text)
}
