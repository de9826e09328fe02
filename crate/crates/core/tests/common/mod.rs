#![allow(dead_code)]

use sdresultant::diffpoly::{DiffPoly, GenericSystem};
use sdresultant::io::{parse_poly, parse_system};

pub const EX0: &str = "u00 + u01*y1^2 ; u10*y1@1 + u11*y1";
pub const EX1: &str = "u00*y1@2 + u01*y1@3 + u02*y2@3 ; u10*y1@2 + u11*y1@3 + u12*y2@3 ; u20*y1@2 + u21*y1@3 + u22*y2@3";
pub const EX2: &str = "u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2";
/// Each polynomial carries its own coefficient block.
pub const EX2N: &str = "u00 + u01*y1*y1@1 ; u10 + u11*y1 ; u20 + u21*y2@1";
pub const LINEAR: &str = "u00 + u01*y1 + u02*y2 ; u10 + u11*y1@1 + u12*y2@1 ; u20 + u21*y1@1 + u22*y2@1";
pub const WORKED: &str = "u00 + u01*y1*y2 ; u10 + u11*y1*y2@1 ; u20 + u21*y2";
pub const PIPELINE: &str = "main y1 y2 y3
u00 + u01*y1@1^2*y2@1^2*y3 + u02*y1^2*y2*y3 ;
u10 + u11*y1@2^4*y2@2^4*y3@1^2 + u12*y1@1^2*y2@1*y3@1 ;
u20 + u21*y1@1^2*y2@1^2*y3 + u22*y1^2*y2*y3 ;
u30 + u31*y1@1*y3";

pub const EX0_SR: &str = "u00*u01@1*u11^2 - u00@1*u01*u10^2";
pub const EX2_SR: &str = "u00@1*u11 - u01@1*u10";
pub const EX2N_SR: &str = "u00*u11*u11@1 + u01*u10*u10@1";
pub const EX1_SR: &str = "u00*u11*u22 - u00*u12*u21 - u01*u10*u22 + u01*u12*u20 + u02*u10*u21 - u02*u11*u20";
pub const PIPELINE_SR: &str = "u00@1^2*u11*u22@1^2 + u00@1*u01@1*u12*u21@1*u22@1 - 2*u00@1*u02@1*u11*u20@1*u22@1 - u00@1*u02@1*u12*u21@1^2 + u01@1^2*u10*u22@1^2 - u01@1^2*u12*u20@1*u22@1 - 2*u01@1*u02@1*u10*u21@1*u22@1 + u01@1*u02@1*u12*u20@1*u21@1 + u02@1^2*u10*u21@1^2 + u02@1^2*u11*u20@1^2";

pub fn sys(text: &str) -> GenericSystem {
    parse_system(text).unwrap()
}

pub fn poly(sys: &GenericSystem, text: &str) -> DiffPoly {
    parse_poly(text, sys.vars()).unwrap()
}

/// `u10·A² + u11·B² − u12·C·A` with `A = u02'u21' − u01'u22'`, `B = u00'u22' − u02'u20'`,
/// `C = u00'u21' − u01'u20'`.
pub fn pipeline_resultant(sys: &GenericSystem) -> DiffPoly {
    let a = poly(sys, "u02@1*u21@1 - u01@1*u22@1");
    let b = poly(sys, "u00@1*u22@1 - u02@1*u20@1");
    let c = poly(sys, "u00@1*u21@1 - u01@1*u20@1");
    &(&(&poly(sys, "u10") * &(&a * &a)) + &(&poly(sys, "u11") * &(&b * &b))) - &(&poly(sys, "u12") * &(&c * &a))
}
