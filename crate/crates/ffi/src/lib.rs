//! C ABI over the weighwright library: opaque strategy handles, status
//! codes, and UTF-8 strings allocated on the Rust side.
//!
//! Conventions: every function returns a [`WwStatus`]; results come back
//! through out-pointers. Strings returned through `char **` out-pointers are
//! owned by the caller and must be released with [`ww_string_free`];
//! strategy handles with [`ww_strategy_free`]. All pointer arguments must be
//! non-null unless stated otherwise.

use std::ffi::{c_char, CStr, CString};


use weighwright::adaptive::{ScenarioCounts, Solver};
use weighwright::document::StrategyDocument;
use weighwright::sequences::{self, ScenarioClass};
use weighwright::synthesis::{self, BuiltinId};
use weighwright::verifier;
use weighwright::{CoinKind, CoinState, Hypothesis, Outcome, Strategy};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WwStatus {
    Ok = 0,
    /// A null pointer, unreadable string, or unknown identifier.
    InvalidArgument = 1,
    /// No strategy exists (or too many coins) for the request.
    Unsolvable = 2,
    /// The strategy failed legitimacy or decodability, or the outcome is
    /// not producible.
    VerificationFailed = 3,
    /// The adaptive search ceiling was exceeded.
    SearchCeiling = 4,
    /// The combination has no established bound.
    UnsupportedBound = 5,
}

/// Opaque strategy handle.
pub struct WwStrategy {
    inner: Strategy,
}

fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn give_string(out: *mut *mut c_char, s: String) -> WwStatus {
    if out.is_null() {
        return WwStatus::InvalidArgument;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            WwStatus::Ok
        }
        Err(_) => WwStatus::InvalidArgument,
    }
}

fn give_strategy(out: *mut *mut WwStrategy, strategy: Strategy) -> WwStatus {
    if out.is_null() {
        return WwStatus::InvalidArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(WwStrategy { inner: strategy })) };
    WwStatus::Ok
}

fn parse_kind(s: &str) -> Option<CoinKind> {
    s.parse().ok()
}

fn parse_state(s: &str) -> Option<CoinState> {
    s.parse().ok()
}

fn parse_class(s: &str) -> Option<ScenarioClass> {
    match s {
        "known-light" => Some(ScenarioClass::Known(CoinState::Light)),
        "known-heavy" => Some(ScenarioClass::Known(CoinState::Heavy)),
        "known-real" => Some(ScenarioClass::Known(CoinState::Real)),
        "mixed" => Some(ScenarioClass::Mixed),
        "unknown-adaptive" => Some(ScenarioClass::UnknownAdaptive),
        "unknown-oblivious" => Some(ScenarioClass::UnknownOblivious),
        _ => None,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ww_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned through a `char **` out-pointer.
#[no_mangle]
pub extern "C" fn ww_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

/// Build one of the built-in tables, e.g. `lhr-unknown-w3-6c`.
#[no_mangle]
pub extern "C" fn ww_strategy_builtin(id: *const c_char, out: *mut *mut WwStrategy) -> WwStatus {
    let Some(id) = read_str(id) else { return WwStatus::InvalidArgument };
    match id.parse::<BuiltinId>() {
        Ok(id) => give_strategy(out, synthesis::builtin_strategy(id)),
        Err(_) => WwStatus::InvalidArgument,
    }
}

/// Parse a `.wwjson` strategy document.
#[no_mangle]
pub extern "C" fn ww_strategy_from_json(
    json: *const c_char,
    out: *mut *mut WwStrategy,
) -> WwStatus {
    let Some(json) = read_str(json) else { return WwStatus::InvalidArgument };
    let Ok(doc) = StrategyDocument::parse(json) else { return WwStatus::InvalidArgument };
    match doc.to_strategy() {
        Ok(strategy) => give_strategy(out, strategy),
        Err(_) => WwStatus::InvalidArgument,
    }
}

/// Synthesize a known-state strategy for `coins` coins in `w` weighings.
#[no_mangle]
pub extern "C" fn ww_strategy_synth_known(
    kind: *const c_char,
    start: *const c_char,
    coins: usize,
    w: usize,
    out: *mut *mut WwStrategy,
) -> WwStatus {
    let (Some(kind), Some(start)) =
        (read_str(kind).and_then(parse_kind), read_str(start).and_then(parse_state))
    else {
        return WwStatus::InvalidArgument;
    };
    match synthesis::synth_known(kind, start, coins, w) {
        Ok(strategy) => give_strategy(out, strategy),
        Err(synthesis::SynthesisError::TooManyCoins { .. }) => WwStatus::Unsolvable,
        Err(_) => WwStatus::InvalidArgument,
    }
}

/// Serialize a strategy as a `.wwjson` document.
#[no_mangle]
pub extern "C" fn ww_strategy_to_json(s: *const WwStrategy, out: *mut *mut c_char) -> WwStatus {
    if s.is_null() {
        return WwStatus::InvalidArgument;
    }
    let strategy = unsafe { &(*s).inner };
    give_string(out, StrategyDocument::from_strategy(strategy, None).to_json())
}

/// Release a strategy handle.
#[no_mangle]
pub extern "C" fn ww_strategy_free(s: *mut WwStrategy) {
    if !s.is_null() {
        unsafe { drop(Box::from_raw(s)) };
    }
}

#[no_mangle]
pub extern "C" fn ww_strategy_num_coins(s: *const WwStrategy) -> usize {
    if s.is_null() {
        return 0;
    }
    unsafe { &(*s).inner }.scenario.num_coins
}

#[no_mangle]
pub extern "C" fn ww_strategy_weighings(s: *const WwStrategy) -> usize {
    if s.is_null() {
        return 0;
    }
    unsafe { &(*s).inner }.weighings()
}

/// Exhaustively verify a strategy; `legitimate` and `decodable` receive the
/// two verdicts. Returns `VerificationFailed` when either check fails.
#[no_mangle]
pub extern "C" fn ww_verify(
    s: *const WwStrategy,
    legitimate: *mut bool,
    decodable: *mut bool,
) -> WwStatus {
    if s.is_null() || legitimate.is_null() || decodable.is_null() {
        return WwStatus::InvalidArgument;
    }
    let strategy = unsafe { &(*s).inner };
    let legit = verifier::check_legitimate(strategy).legitimate;
    let dec = legit && verifier::verify_decodable(strategy).map(|r| r.decodable).unwrap_or(false);
    unsafe {
        *legitimate = legit;
        *decodable = dec;
    }
    if legit && dec {
        WwStatus::Ok
    } else {
        WwStatus::VerificationFailed
    }
}

/// Simulate one hypothesis; the outcome string (over `=<>`) comes back in
/// `out`.
#[no_mangle]
pub extern "C" fn ww_simulate(
    s: *const WwStrategy,
    coin: usize,
    start: *const c_char,
    out: *mut *mut c_char,
) -> WwStatus {
    if s.is_null() {
        return WwStatus::InvalidArgument;
    }
    let Some(start) = read_str(start).and_then(parse_state) else {
        return WwStatus::InvalidArgument;
    };
    let strategy = unsafe { &(*s).inner };
    match verifier::simulate(strategy, Hypothesis { coin, start }) {
        Ok(outcome) => give_string(out, outcome.to_string()),
        Err(_) => WwStatus::InvalidArgument,
    }
}

/// Decode an observed outcome. `coin` receives the fake coin's index and
/// `state` the starting state (`light`/`heavy`/`real`, or `ambiguous` for
/// the never-weighed coin of an unknown scenario).
#[no_mangle]
pub extern "C" fn ww_decode(
    s: *const WwStrategy,
    outcome: *const c_char,
    coin: *mut usize,
    state: *mut *mut c_char,
) -> WwStatus {
    if s.is_null() || coin.is_null() {
        return WwStatus::InvalidArgument;
    }
    let Some(observed) = read_str(outcome).and_then(|t| t.parse::<Outcome>().ok()) else {
        return WwStatus::InvalidArgument;
    };
    let strategy = unsafe { &(*s).inner };
    match verifier::decode(strategy, &observed) {
        Ok(decoded) => {
            unsafe { *coin = decoded.coin };
            let label = decoded.state.map(|st| st.name().to_string()).unwrap_or_else(|| "ambiguous".into());
            give_string(state, label)
        }
        Err(_) => WwStatus::VerificationFailed,
    }
}

/// The maximal number of coins processable in `w` weighings for a kind and
/// scenario class; the decimal value comes back as a string because it
/// overflows machine words for large `w`.
#[no_mangle]
pub extern "C" fn ww_bound(
    kind: *const c_char,
    class: *const c_char,
    w: usize,
    out: *mut *mut c_char,
) -> WwStatus {
    let (Some(kind), Some(class)) =
        (read_str(kind).and_then(parse_kind), read_str(class).and_then(parse_class))
    else {
        return WwStatus::InvalidArgument;
    };
    match sequences::bound(kind, class, w) {
        Ok(value) => give_string(out, value.to_string()),
        Err(sequences::BoundError::UnsupportedBound { .. }) => WwStatus::UnsupportedBound,
        Err(_) => WwStatus::InvalidArgument,
    }
}

/// Adaptive solvability of the count state l:h:r:u (+genuine ballast) in
/// `w` weighings.
#[no_mangle]
pub extern "C" fn ww_solve(
    kind: *const c_char,
    light: usize,
    heavy: usize,
    real: usize,
    unknown: usize,
    genuine: usize,
    w: usize,
    solvable: *mut bool,
) -> WwStatus {
    let Some(kind) = read_str(kind).and_then(parse_kind) else {
        return WwStatus::InvalidArgument;
    };
    if solvable.is_null() {
        return WwStatus::InvalidArgument;
    }
    let state = ScenarioCounts::new(light, heavy, real, unknown, genuine);
    match Solver::new(kind).solvable(&state, w) {
        Ok(verdict) => {
            unsafe { *solvable = verdict };
            WwStatus::Ok
        }
        Err(weighwright::adaptive::AdaptiveError::SearchCeilingExceeded { .. }) => {
            WwStatus::SearchCeiling
        }
        Err(_) => WwStatus::InvalidArgument,
    }
}
