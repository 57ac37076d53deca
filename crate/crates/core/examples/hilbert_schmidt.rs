//! Hilbert–Schmidt norms from explicit kernel sums against the closed form,
//! plus the periodized-sinc form of a rectangular band kernel.

use qft_uncertainty::limiting::{hs_norm_check, kernel_eval, kernel_rect_sinc};
use qft_uncertainty::{LimitingPair, MaskSpec};

fn main() -> qft_uncertainty::Result<()> {
    for (t, w, dims) in [
        ("block:0,0,2,2", "rect:1,1", (8, 8)),
        ("block:1,1,3,2", "cells:0,0;0,1;5,5", (6, 6)),
        ("disc:5,5,2", "rect:2,1", (12, 12)),
    ] {
        let pair = LimitingPair::from_specs(&t.parse::<MaskSpec>()?, &w.parse::<MaskSpec>()?, dims.0, dims.1)?;
        let check = hs_norm_check(&pair).expect("small grid");
        println!(
            "T={t:<16} W={w:<18} closed={:.12} F_W S_T={:.12} S_T F_W={:.12}",
            check.closed_form, check.fw_st, check.st_fw
        );
    }

    let pair = LimitingPair::from_specs(&"rect:3,3".parse()?, &"rect:2,2".parse()?, 16, 16)?;
    println!("\nk(t, x) for t = (0, 0) along the first row:");
    for col in 0..6 {
        let exact = kernel_eval(&pair, (0, 0), (0, col))?;
        let sinc = kernel_rect_sinc(&pair, (0, 0), (0, col))?;
        println!("  x=(0,{col})  sum={:.6}  sinc={:.6}", exact.w, sinc.w);
    }
    Ok(())
}
