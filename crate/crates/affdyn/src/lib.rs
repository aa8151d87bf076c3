pub mod exactnum;
pub mod linalg;
pub mod par;
pub mod perron;
pub mod infnear;
pub mod boundary;
pub mod valuation;
pub mod dynamics;
pub mod zigzag;
pub mod thompson;
pub mod degoracle;
pub mod verify;
