pub mod plane_curves;
