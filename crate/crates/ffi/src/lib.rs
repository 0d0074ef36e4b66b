//! C ABI over the `hambypass` toolkit.
//!
//! Digraphs cross the boundary as opaque `HbDigraph` handles owned by the
//! caller and released with `hb_digraph_free`. Every function returns an
//! `HbStatus`; on failure a message is available from `hb_last_error` until
//! the next call on the same thread. Strings returned by the library are
//! released with `hb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hambypass::families::{
    bypass_pattern, complete_bipartite_digraph, complete_digraph, d0, d1, directed_cycle, t5, InnerSpec,
};
use hambypass::iso::{are_isomorphic, canonical_form, is_isomorphic_to_t5};
use hambypass::search::{find_hamiltonian_bypass, find_hamiltonian_cycle, find_pre_hamiltonian_cycle};
use hambypass::{Condition, Digraph};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    UnknownCondition = 4,
    BufferTooSmall = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// Opaque digraph handle.
pub struct HbDigraph(Digraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(HbStatus, String);

impl Fail {
    fn new(status: HbStatus, msg: impl std::fmt::Display) -> Fail {
        Fail(status, msg.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HbStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HbStatus::Panic
        }
    }
}

unsafe fn graph<'a>(g: *const HbDigraph) -> Result<&'a Digraph, Fail> {
    g.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Fail::new(HbStatus::NullPointer, "null digraph handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail::new(HbStatus::NullPointer, "null output pointer"))
}

unsafe fn string<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::new(HbStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail::new(HbStatus::InvalidUtf8, e))
}

fn boxed(g: Digraph) -> *mut HbDigraph {
    Box::into_raw(Box::new(HbDigraph(g)))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Fail::new(HbStatus::InvalidArgument, e))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a digraph of order `n` from `arc_count` pairs stored flat in `arcs`
/// (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `arcs` must point to `2 * arc_count` readable values (or be null when
/// `arc_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_new(
    n: usize,
    arcs: *const usize,
    arc_count: usize,
    out: *mut *mut HbDigraph,
) -> HbStatus {
    guard(|| {
        let out = out_ref(out)?;
        let flat: &[usize] = if arc_count == 0 {
            &[]
        } else if arcs.is_null() {
            return Err(Fail::new(HbStatus::NullPointer, "null arc array"));
        } else {
            std::slice::from_raw_parts(arcs, 2 * arc_count)
        };
        let pairs: Vec<_> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let g = Digraph::new(n, &pairs).map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        *out = boxed(g);
        Ok(())
    })
}

/// Parses the text format (`n m` header, then one `u v` arc per line).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_parse(text: *const c_char, out: *mut *mut HbDigraph) -> HbStatus {
    guard(|| {
        let out = out_ref(out)?;
        let g = Digraph::parse_text(string(text)?).map_err(|e| Fail::new(HbStatus::ParseError, e))?;
        *out = boxed(g);
        Ok(())
    })
}

/// Generates a family member: `kstar` (n), `cycle` (n), `dnk` (n, k), `t5`,
/// `d0` (n, empty inner part), `d1` (n, k) or `kbipartite` (parts n and k).
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_family(
    family: *const c_char,
    n: usize,
    k: usize,
    out: *mut *mut HbDigraph,
) -> HbStatus {
    guard(|| {
        let out = out_ref(out)?;
        let g = match string(family)? {
            "kstar" => complete_digraph(n),
            "cycle" => directed_cycle(n),
            "dnk" => bypass_pattern(n, k),
            "t5" => Ok(t5()),
            "d0" => d0(n, &InnerSpec::Empty),
            "d1" => d1(n, k),
            "kbipartite" => complete_bipartite_digraph(n, k),
            other => return Err(Fail::new(HbStatus::InvalidArgument, format!("unknown family `{other}`"))),
        }
        .map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        *out = boxed(g);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_free(g: *mut HbDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of `g`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_order(g: *const HbDigraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.order())
}

/// Arc count of `g`, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_arc_count(g: *const HbDigraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.arc_count())
}

/// Whether the arc `u -> v` is present; false for a null handle or
/// out-of-range vertices.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_has_arc(g: *const HbDigraph, u: usize, v: usize) -> bool {
    g.as_ref()
        .is_some_and(|h| u < h.0.order() && v < h.0.order() && h.0.has_arc(u, v))
}

/// Evaluates a condition id such as `a_k:0`, `meyniel` or `thm16`.
///
/// # Safety
/// `g` must be a live handle, `id` a nul-terminated string and `holds`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hb_check_condition(
    g: *const HbDigraph,
    id: *const c_char,
    holds: *mut bool,
) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        let holds = out_ref(holds)?;
        let cond: Condition = string(id)?
            .parse()
            .map_err(|e| Fail::new(HbStatus::UnknownCondition, e))?;
        *holds = cond
            .check(g)
            .map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?
            .holds;
        Ok(())
    })
}

unsafe fn write_vertices(
    vertices: Option<&[usize]>,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> Result<(), Fail> {
    let len = out_ref(len)?;
    match vertices {
        None => *len = 0,
        Some(vs) => {
            if vs.len() > capacity {
                *len = vs.len();
                return Err(Fail::new(
                    HbStatus::BufferTooSmall,
                    format!("need room for {} vertices", vs.len()),
                ));
            }
            if buf.is_null() {
                return Err(Fail::new(HbStatus::NullPointer, "null vertex buffer"));
            }
            std::ptr::copy_nonoverlapping(vs.as_ptr(), buf, vs.len());
            *len = vs.len();
        }
    }
    Ok(())
}

/// Writes the vertex order of the lexicographically first Hamiltonian bypass
/// into `buf` and its length (the order of `g`) into `len`; `len` is 0 when
/// there is none. On `BufferTooSmall`, `len` holds the required capacity.
///
/// # Safety
/// `g` must be a live handle; `buf` must have room for `capacity` values and
/// `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hb_find_bypass(
    g: *const HbDigraph,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        let w = find_hamiltonian_bypass(g).map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        write_vertices(w.as_ref().map(|w| w.order.as_slice()), buf, capacity, len)
    })
}

/// Like [`hb_find_bypass`] for a Hamiltonian cycle.
///
/// # Safety
/// As for [`hb_find_bypass`].
#[no_mangle]
pub unsafe extern "C" fn hb_find_hamiltonian_cycle(
    g: *const HbDigraph,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        let c = find_hamiltonian_cycle(g);
        write_vertices(c.as_ref().map(|c| c.vertices()), buf, capacity, len)
    })
}

/// Like [`hb_find_bypass`] for a cycle through all but one vertex.
///
/// # Safety
/// As for [`hb_find_bypass`].
#[no_mangle]
pub unsafe extern "C" fn hb_find_pre_hamiltonian_cycle(
    g: *const HbDigraph,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        let c = find_pre_hamiltonian_cycle(g).map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        write_vertices(c.as_ref().map(|c| c.vertices()), buf, capacity, len)
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_is_isomorphic_to_t5(g: *const HbDigraph, out: *mut bool) -> HbStatus {
    guard(|| {
        *out_ref(out)? = is_isomorphic_to_t5(graph(g)?);
        Ok(())
    })
}

/// Isomorphism test for orders up to 8.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_are_isomorphic(
    a: *const HbDigraph,
    b: *const HbDigraph,
    out: *mut bool,
) -> HbStatus {
    guard(|| {
        let (a, b) = (graph(a)?, graph(b)?);
        let out = out_ref(out)?;
        *out = are_isomorphic(a, b).map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        Ok(())
    })
}

/// Canonical form as a hex string (orders up to 8). Free with
/// [`hb_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_canonical_hex(g: *const HbDigraph, out: *mut *mut c_char) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        let out = out_ref(out)?;
        let cf = canonical_form(g).map_err(|e| Fail::new(HbStatus::InvalidArgument, e))?;
        *out = c_string(cf.to_hex())?;
        Ok(())
    })
}

/// The digraph in the text format. Free with [`hb_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hb_digraph_to_text(g: *const HbDigraph, out: *mut *mut c_char) -> HbStatus {
    guard(|| {
        let g = graph(g)?;
        *out_ref(out)? = c_string(g.to_text())?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
