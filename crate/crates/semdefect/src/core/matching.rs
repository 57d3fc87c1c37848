//! Detection-to-ground-truth matching and the resolution-invariance helper.

use super::bbox::{iou, BBox, Detection};

/// Documents the resolution-invariance contract: normalized boxes are
/// identical at every resolution, so rescaling is the identity on the stored
/// values. Only pixel-space renderings (see [`BBox::to_pixel_rect`]) differ.
pub fn rescale_boxes(boxes: &[BBox], _from_res: (u32, u32), _to_res: (u32, u32)) -> Vec<BBox> {
    boxes.to_vec()
}

/// Greedily assigns detections to ground-truth boxes.
///
/// Detections must arrive sorted by descending confidence (ties broken by
/// input order — the caller's order is kept). Each detection, in turn, takes
/// the not-yet-matched ground-truth box of its own category with the highest
/// IoU, provided that IoU is >= `iou_thr`; otherwise it is a false positive
/// (`None`). Equal-IoU ties go to the lowest ground-truth index. Each ground
/// truth is matched at most once.
///
/// Returns one `(detection index, matched ground-truth index)` entry per
/// detection, in the input order.
pub fn greedy_match(
    dets: &[Detection],
    gts: &[BBox],
    iou_thr: f32,
) -> Vec<(usize, Option<usize>)> {
    debug_assert!(
        dets.windows(2).all(|w| w[0].confidence >= w[1].confidence),
        "detections must be sorted by descending confidence"
    );
    let mut taken = vec![false; gts.len()];
    let mut out = Vec::with_capacity(dets.len());
    for (di, det) in dets.iter().enumerate() {
        let mut best: Option<(usize, f32)> = None;
        for (gi, gt) in gts.iter().enumerate() {
            if taken[gi] || gt.category != det.bbox.category {
                continue;
            }
            let v = iou(&det.bbox, gt);
            if v >= iou_thr {
                let better = match best {
                    None => true,
                    Some((_, bv)) => v > bv,
                };
                if better {
                    best = Some((gi, v));
                }
            }
        }
        match best {
            Some((gi, _)) => {
                taken[gi] = true;
                out.push((di, Some(gi)));
            }
            None => out.push((di, None)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::bbox::Detection;

    fn b(cat: u32, cx: f32, cy: f32, w: f32, h: f32) -> BBox {
        BBox::new(cat, cx, cy, w, h).unwrap()
    }

    fn d(bbox: BBox, conf: f32) -> Detection {
        Detection::new(bbox, conf).unwrap()
    }

    #[test]
    fn rescale_is_identity_on_normalized_boxes() {
        let boxes = vec![b(0, 0.5, 0.5, 0.25, 0.25), b(1, 0.1, 0.9, 0.05, 0.05)];
        let out = rescale_boxes(&boxes, (1024, 1024), (512, 512));
        assert_eq!(out, boxes);
    }

    #[test]
    fn exact_hit_matches() {
        let gt = b(0, 0.5, 0.5, 0.2, 0.2);
        let m = greedy_match(&[d(gt, 0.9)], &[gt], 0.5);
        assert_eq!(m, vec![(0, Some(0))]);
    }

    #[test]
    fn second_detection_on_same_gt_is_false_positive() {
        let gt = b(0, 0.5, 0.5, 0.2, 0.2);
        let dets = vec![d(gt, 0.9), d(gt, 0.8)];
        let m = greedy_match(&dets, &[gt], 0.5);
        assert_eq!(m, vec![(0, Some(0)), (1, None)]);
    }

    #[test]
    fn category_mismatch_never_matches() {
        let gt = b(0, 0.5, 0.5, 0.2, 0.2);
        let det = d(b(1, 0.5, 0.5, 0.2, 0.2), 0.9);
        let m = greedy_match(&[det], &[gt], 0.5);
        assert_eq!(m, vec![(0, None)]);
    }

    #[test]
    fn detection_takes_highest_iou_free_gt() {
        // One detection overlapping two ground truths; the tighter one wins.
        let gt_loose = b(0, 0.50, 0.5, 0.40, 0.40);
        let gt_tight = b(0, 0.52, 0.5, 0.22, 0.20);
        let det = d(b(0, 0.52, 0.5, 0.2, 0.2), 0.9);
        let m = greedy_match(&[det], &[gt_loose, gt_tight], 0.1);
        assert_eq!(m, vec![(0, Some(1))]);
    }

    #[test]
    fn each_gt_matched_at_most_once() {
        let gt = b(0, 0.5, 0.5, 0.2, 0.2);
        let dets = vec![d(gt, 0.9), d(gt, 0.8), d(gt, 0.7)];
        let m = greedy_match(&dets, &[gt], 0.5);
        let matched: Vec<_> = m.iter().filter(|(_, g)| g.is_some()).collect();
        assert_eq!(matched.len(), 1);
    }
}
