use std::ffi::{c_char, CStr};
use std::ptr;

use liebasis_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    let n = unsafe { lb_last_error(buf.as_mut_ptr(), buf.len()) };
    if n == 0 {
        return String::new();
    }
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn counts() {
    let mut c = LbCounts::default();
    let expected = [(2, 4, 4, 0), (3, 10, 9, 1), (4, 18, 15, 3)];
    for (n, p, cc, d) in expected {
        assert_eq!(unsafe { lb_counts(n, &mut c) }, LbStatus::Ok);
        assert_eq!((c.n, c.product, c.coupled, c.difference), (n, p, cc, d));
    }
    assert_eq!(unsafe { lb_counts(1, &mut c) }, LbStatus::DomainError);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { lb_counts(3, ptr::null_mut()) }, LbStatus::NullPointer);
}

#[test]
fn algebra_handle() {
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { lb_algebra_new(2, &mut alg) }, LbStatus::Ok);
    assert_eq!(unsafe { lb_algebra_generator_count(alg) }, 3);
    assert_eq!(unsafe { lb_algebra_n(alg) }, 2);
    let (mut re, mut im) = ([0.0; 4], [0.0; 4]);
    assert_eq!(unsafe { lb_algebra_generator(alg, 1, re.as_mut_ptr(), im.as_mut_ptr(), 4) }, LbStatus::Ok);
    // σ_y / 2
    assert_eq!(re, [0.0; 4]);
    assert_eq!(im, [0.0, -0.5, 0.5, 0.0]);
    assert_eq!(
        unsafe { lb_algebra_generator(alg, 3, re.as_mut_ptr(), im.as_mut_ptr(), 4) },
        LbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { lb_algebra_generator(alg, 0, re.as_mut_ptr(), im.as_mut_ptr(), 3) },
        LbStatus::BufferTooSmall
    );
    unsafe { lb_algebra_free(alg) };
    unsafe { lb_algebra_free(ptr::null_mut()) };
    assert_eq!(unsafe { lb_algebra_generator_count(ptr::null()) }, 0);
}

#[test]
fn verify_su3_adjoint_square() {
    let mut r = ptr::null_mut();
    let st = unsafe { lb_verify(3, LbRepKind::Adjoint as i32, LbRepKind::Adjoint as i32, LbBasisKind::Coupled as i32, false, 0.0, &mut r) };
    assert_eq!(st, LbStatus::Ok);
    assert!(!unsafe { lb_report_is_complete(r) });
    assert_eq!(unsafe { lb_report_max_block_dim(r) }, 2);
    let count = unsafe { lb_report_block_count(r) } as usize;
    assert_eq!(count, 56);
    let mut dims = vec![0u32; count];
    assert_eq!(unsafe { lb_report_block_dims(r, dims.as_mut_ptr(), count) }, LbStatus::Ok);
    assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 8);
    assert_eq!(dims.iter().sum::<u32>(), 64);
    assert_eq!(unsafe { lb_report_block_dims(r, dims.as_mut_ptr(), count - 1) }, LbStatus::BufferTooSmall);

    let mut needed = 0usize;
    assert_eq!(unsafe { lb_report_json(r, ptr::null_mut(), 0, &mut needed) }, LbStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(unsafe { lb_report_json(r, buf.as_mut_ptr(), needed, ptr::null_mut()) }, LbStatus::Ok);
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(v["verdict"], "incomplete");
    unsafe { lb_report_free(r) };

    let st = unsafe { lb_verify(3, 2, 2, 1, true, 0.0, &mut r) };
    assert_eq!(st, LbStatus::Ok);
    assert!(unsafe { lb_report_is_complete(r) });
    unsafe { lb_report_free(r) };
}

#[test]
fn verify_rejects_bad_input() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { lb_verify(3, 0, 2, 1, true, 0.0, &mut r) }, LbStatus::InvalidArgument);
    assert!(r.is_null());
    assert!(last_error().contains("identical"));
    assert_eq!(unsafe { lb_verify(3, 7, 0, 1, false, 0.0, &mut r) }, LbStatus::InvalidArgument);
    assert_eq!(unsafe { lb_verify(3, 0, 0, 9, false, 0.0, &mut r) }, LbStatus::InvalidArgument);
    assert_eq!(unsafe { lb_verify(1, 0, 0, 0, false, 0.0, &mut r) }, LbStatus::InvalidArgument);
    assert_eq!(unsafe { lb_verify(3, 0, 0, 0, false, 0.0, ptr::null_mut()) }, LbStatus::NullPointer);
}

#[test]
fn decompose_adjoint_square() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { lb_decompose(3, 2, 2, &mut d) }, LbStatus::Ok);
    let len = unsafe { lb_decomposition_len(d) };
    let comps: Vec<LbComponent> = (0..len)
        .map(|i| {
            let mut c = LbComponent::default();
            assert_eq!(unsafe { lb_decomposition_component(d, i, &mut c) }, LbStatus::Ok);
            c
        })
        .collect();
    let summary: Vec<(u32, u32, i32, i32)> = comps.iter().map(|c| (c.total_dim, c.multiplicity, c.p, c.q)).collect();
    assert_eq!(summary, vec![(27, 1, 2, 2), (16, 2, 1, 1), (10, 1, 0, 3), (10, 1, 3, 0), (1, 1, 0, 0)]);
    let mut c = LbComponent::default();
    assert_eq!(unsafe { lb_decomposition_component(d, len, &mut c) }, LbStatus::InvalidArgument);
    let mut needed = 0usize;
    unsafe { lb_decomposition_json(d, ptr::null_mut(), 0, &mut needed) };
    assert!(needed > 2);
    unsafe { lb_decomposition_free(d) };
}

#[test]
fn su4_components_have_unknown_labels() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { lb_decompose(4, 0, 0, &mut d) }, LbStatus::Ok);
    let mut c = LbComponent::default();
    assert_eq!(unsafe { lb_decomposition_component(d, 0, &mut c) }, LbStatus::Ok);
    assert_eq!((c.total_dim, c.irrep_dim, c.multiplicity, c.p, c.q), (10, 10, 1, -1, -1));
    unsafe { lb_decomposition_free(d) };
}
