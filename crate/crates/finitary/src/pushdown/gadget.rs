use super::{PushdownProcess, Transition};
use crate::arena::Player;
use crate::error::{Error, Result};

/// The fresh stack symbol used by the restart gadget.
pub const RESTART_SYMBOL: &str = "♯";

/// Lets Eve restart before entering any state: every transition into `q`
/// now enters `c_q`, where Eve either goes on to `q` or hands over to `z_q`
/// (color 0, Adam pushes ♯ as long as he likes), then `w_q` (color d) pops
/// every ♯ and continues to `q`.
///
/// Original states keep their ids; gadget states follow. The new maximal
/// color is `d + 1`, worn by the `c_q` states only.
pub fn restart_gadget(pd: &PushdownProcess) -> Result<PushdownProcess> {
    pd.validate()?;
    let d = pd.max_color;
    if d.is_multiple_of(2) {
        return Err(Error::EvenMaxColor(d));
    }
    let mut out = PushdownProcess::new(format!("{}-restart", pd.name), d + 1);
    out.states = pd.states.clone();
    out.alphabet = pd.alphabet.clone();
    if out.symbol_id(RESTART_SYMBOL).is_some() {
        return Err(Error::BadParams(format!("symbol {RESTART_SYMBOL} already in use")));
    }
    let sharp = out.add_symbol(RESTART_SYMBOL);
    let mut entry: Vec<Option<usize>> = vec![None; pd.num_states()];
    for q in 0..pd.num_states() {
        if !pd.transitions.iter().any(|t| t.to == q) {
            continue;
        }
        let name = &pd.states[q].name;
        let c = out.add_state(format!("c.{name}"), Player::Eve, d + 1);
        let z = out.add_state(format!("z.{name}"), Player::Adam, 0);
        let w = out.add_state(format!("w.{name}"), Player::Eve, d);
        out.skip_any(c, q);
        out.skip_any(c, z);
        out.push_any(z, sharp, z);
        out.skip_any(z, w);
        out.pop(w, sharp, w);
        for t in out.tops() {
            if t != Some(sharp) {
                out.skip(w, t, q);
            }
        }
        entry[q] = Some(c);
    }
    for t in &pd.transitions {
        out.transitions.push(Transition {
            to: entry[t.to].expect("every target has a gadget"),
            ..*t
        });
    }
    out.validate()?;
    Ok(out)
}
