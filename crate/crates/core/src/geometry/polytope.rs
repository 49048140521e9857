//! Convex polytopes with derived facet data.
//!
//! A [`Polytope`] stores its extreme points together with one
//! [`FacetData`] record per facet: the exterior unit normal, the
//! (n-1)-measure of the facet and the support value in that normal
//! direction. Facet areas are the atoms of the surface area measure, so
//! most downstream operations never touch the vertices again.
//!
//! Hulls are computed in floating point with a coplanarity tolerance of
//! 1e-10: coplanar triangles produced by the 3D incremental hull are
//! merged into a single facet, and collinear chain points are dropped by
//! the 2D monotone chain.

use std::collections::HashMap;

use super::{rot90, GeometryError, Vec3, COPLANAR_TOL, ORIGIN_MARGIN};

/// One facet of a polytope: exterior unit normal, facet measure and
/// support value. The weight of the surface-area-measure atom carried by
/// the facet is exactly `area`.
#[derive(Debug, Clone)]
pub struct FacetData {
    pub normal: Vec3,
    pub area: f64,
    pub support: f64,
    /// Indices into the vertex list (unordered).
    pub vertex_ids: Vec<usize>,
    /// Triangulation of the facet (3D) or the edge itself (2D), used for
    /// exact moment integrals.
    pub(crate) simplices: Vec<Vec<usize>>,
}

/// A full-dimensional convex polytope in dimension 2 or 3.
///
/// Immutable after construction; all derived data (facets, edges, volume,
/// interior flag) is computed once by [`build_polytope`].
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec3>,
    facets: Vec<FacetData>,
    edges: Vec<(usize, usize)>,
    interior_point: Vec3,
    volume: f64,
    origin_interior: bool,
}

/// Convex hull of the given points with derived facet data.
///
/// Only the extreme points survive. Fails with `DegenerateInput` when the
/// hull is not full-dimensional (collinear points in the plane, coplanar
/// points in space).
pub fn build_polytope(dim: usize, points: &[Vec3]) -> Result<Polytope, GeometryError> {
    assert!(dim == 2 || dim == 3, "only dimensions 2 and 3 are supported");
    if points.len() < dim + 1 {
        return Err(GeometryError::DegenerateInput);
    }
    let scale = points
        .iter()
        .map(|p| p.amax())
        .fold(0.0_f64, f64::max)
        .max(1e-30);
    let pts = dedupe(points, 1e-12 * scale);
    if pts.len() < dim + 1 {
        return Err(GeometryError::DegenerateInput);
    }
    match dim {
        2 => finish_2d(hull_2d(&pts, scale)?),
        _ => finish_3d(&pts, scale),
    }
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    /// Vertex index pairs of the 1-skeleton (3D) or the polygon edges (2D).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn interior_point(&self) -> Vec3 {
        self.interior_point
    }

    /// Whether the origin is strictly interior, with margin 1e-9 on every
    /// facet support.
    pub fn contains_origin_interior(&self) -> bool {
        self.origin_interior
    }

    /// Support function h(x) = max over vertices of x . v. Positively
    /// homogeneous of degree one.
    pub fn support(&self, x: &Vec3) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Radial function in direction `v`: the exact minimum over facets of
    /// support / (v . normal) among facets facing `v`.
    pub fn radial(&self, v: &Vec3) -> Result<f64, GeometryError> {
        if !self.origin_interior {
            return Err(GeometryError::OriginNotInterior);
        }
        let mut rho = f64::INFINITY;
        for f in &self.facets {
            let d = v.dot(&f.normal);
            if d > 1e-14 {
                rho = rho.min(f.support / d);
            }
        }
        debug_assert!(rho.is_finite());
        Ok(rho)
    }

    /// Radial function of the polar body: 1 / h(v), exactly.
    pub fn polar_radial(&self, v: &Vec3) -> Result<f64, GeometryError> {
        if !self.origin_interior {
            return Err(GeometryError::OriginNotInterior);
        }
        Ok(1.0 / self.support(v))
    }

    /// Surface area measure as (unit normal, weight) atoms, one per facet.
    pub fn surface_measure(&self) -> Vec<(Vec3, f64)> {
        self.facets.iter().map(|f| (f.normal, f.area)).collect()
    }

    /// Membership test with additive tolerance on every facet constraint.
    pub fn contains_point(&self, x: &Vec3, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.support + tol)
    }

    /// Image under an invertible linear map (hull rebuilt from the mapped
    /// vertices). For dim 2 the map must fix the plane z = 0.
    pub fn linear_image(&self, a: &nalgebra::Matrix3<f64>) -> Result<Polytope, GeometryError> {
        let mapped: Vec<Vec3> = self.vertices.iter().map(|v| a * v).collect();
        build_polytope(self.dim, &mapped)
    }

    /// Translate by `t` (hull structure reused, facet data shifted).
    pub fn translate(&self, t: &Vec3) -> Result<Polytope, GeometryError> {
        let moved: Vec<Vec3> = self.vertices.iter().map(|v| v + t).collect();
        build_polytope(self.dim, &moved)
    }

    /// The reflection -K.
    pub fn negated(&self) -> Result<Polytope, GeometryError> {
        let neg: Vec<Vec3> = self.vertices.iter().map(|v| -v).collect();
        build_polytope(self.dim, &neg)
    }

    /// (n-1)-measure of the section by the hyperplane { x . v = t }:
    /// chord length in the plane, section polygon area in space. Exact for
    /// the stored polytope.
    pub fn section_measure(&self, v: &Vec3, t: f64) -> f64 {
        let u = v.normalize();
        let scale = self.vertices.iter().map(|p| p.amax()).fold(1e-30, f64::max);
        let tol = 1e-12 * scale;
        let mut cut: Vec<Vec3> = Vec::new();
        for &(i, j) in &self.edges {
            let (a, b) = (self.vertices[i], self.vertices[j]);
            let (da, db) = (a.dot(&u) - t, b.dot(&u) - t);
            if da.abs() <= tol {
                cut.push(a);
            }
            if db.abs() <= tol {
                cut.push(b);
            }
            if (da > tol && db < -tol) || (da < -tol && db > tol) {
                let s = da / (da - db);
                cut.push(a + (b - a) * s);
            }
        }
        if cut.len() < 2 {
            return 0.0;
        }
        if self.dim == 2 {
            // Spread of the cut points along the in-plane direction of the line.
            let dir = rot90(&u);
            let coords: Vec<f64> = cut.iter().map(|p| p.dot(&dir)).collect();
            let lo = coords.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = coords.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (hi - lo).max(0.0)
        } else {
            // The cut points are the vertices of a convex polygon inside the
            // plane; order them angularly and apply the shoelace formula.
            let (e1, e2) = super::orthonormal_complement(&u);
            let mut planar: Vec<(f64, f64)> =
                cut.iter().map(|p| (p.dot(&e1), p.dot(&e2))).collect();
            let cx = planar.iter().map(|p| p.0).sum::<f64>() / planar.len() as f64;
            let cy = planar.iter().map(|p| p.1).sum::<f64>() / planar.len() as f64;
            planar.sort_by(|p, q| {
                let ap = (p.1 - cy).atan2(p.0 - cx);
                let aq = (q.1 - cy).atan2(q.0 - cx);
                ap.partial_cmp(&aq).unwrap()
            });
            let mut area2 = 0.0;
            for k in 0..planar.len() {
                let (x0, y0) = planar[k];
                let (x1, y1) = planar[(k + 1) % planar.len()];
                area2 += x0 * y1 - x1 * y0;
            }
            area2.abs() / 2.0
        }
    }

    /// Parameter interval of { s : base + s dir in K }, or None if the ray
    /// line misses the polytope.
    pub fn line_chord(&self, base: &Vec3, dir: &Vec3) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for f in &self.facets {
            let nb = f.normal.dot(base);
            let nd = f.normal.dot(dir);
            if nd.abs() <= 1e-15 {
                if nb > f.support + 1e-12 {
                    return None;
                }
            } else {
                let s = (f.support - nb) / nd;
                if nd > 0.0 {
                    hi = hi.min(s);
                } else {
                    lo = lo.max(s);
                }
            }
        }
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Consistency checks on the derived data: unit normals, the discrete
    /// closure condition sum(area * normal) = 0, exact supports, and the
    /// agreement of the cone volume identity with the fan volume.
    pub fn validate(&self) -> Result<(), GeometryError> {
        let mut closure = Vec3::zeros();
        let mut total_area = 0.0;
        for f in &self.facets {
            if f.area <= 0.0 {
                return Err(GeometryError::DegenerateBody("nonpositive facet area".into()));
            }
            if (f.normal.norm() - 1.0).abs() > 1e-12 {
                return Err(GeometryError::DegenerateBody("facet normal not unit".into()));
            }
            let h = self.support(&f.normal);
            if (h - f.support).abs() > 1e-9 * h.abs().max(1.0) {
                return Err(GeometryError::DegenerateBody("facet support mismatch".into()));
            }
            closure += f.normal * f.area;
            total_area += f.area;
        }
        if closure.norm() > 1e-9 * total_area {
            return Err(GeometryError::DegenerateBody("surface measure not closed".into()));
        }
        if self.origin_interior {
            let n = self.dim as f64;
            let cone: f64 = self.facets.iter().map(|f| f.support * f.area).sum::<f64>() / n;
            if (cone - self.volume).abs() > 1e-9 * self.volume {
                return Err(GeometryError::DegenerateBody("volume identity violated".into()));
            }
        }
        Ok(())
    }
}

/// Tolerance dedupe through a spatial hash (large chord clouds from the
/// approximate symmetrizers make the quadratic scan prohibitive).
fn dedupe(points: &[Vec3], tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::with_capacity(points.len());
    let cell = tol.max(1e-300);
    let key = |p: &Vec3| {
        (
            (p.x / cell).floor() as i64,
            (p.y / cell).floor() as i64,
            (p.z / cell).floor() as i64,
        )
    };
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    'next: for p in points {
        let (kx, ky, kz) = key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(bucket) = grid.get(&(kx + dx, ky + dy, kz + dz)) {
                        if bucket.iter().any(|&i| (p - out[i]).norm() <= tol) {
                            continue 'next;
                        }
                    }
                }
            }
        }
        grid.entry((kx, ky, kz)).or_default().push(out.len());
        out.push(*p);
    }
    out
}

// ---------------------------------------------------------------------------
// 2D: monotone chain
// ---------------------------------------------------------------------------

fn cross2(o: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Counterclockwise hull ring. Nearly collinear chain points (signed area
/// below the coplanarity tolerance) are dropped.
fn hull_2d(points: &[Vec3], scale: f64) -> Result<Vec<Vec3>, GeometryError> {
    let turn_tol = COPLANAR_TOL * scale * scale;
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    let mut lower: Vec<Vec3> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= turn_tol
        {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec3> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= turn_tol
        {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeometryError::DegenerateInput);
    }
    Ok(lower)
}

fn finish_2d(ring: Vec<Vec3>) -> Result<Polytope, GeometryError> {
    let m = ring.len();
    let mut facets = Vec::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let j = (i + 1) % m;
        let d = ring[j] - ring[i];
        let len = d.norm();
        if len <= 0.0 {
            return Err(GeometryError::DegenerateInput);
        }
        // Outward normal of a counterclockwise ring.
        let normal = Vec3::new(d.y / len, -d.x / len, 0.0);
        let support = ring.iter().map(|v| v.dot(&normal)).fold(f64::NEG_INFINITY, f64::max);
        facets.push(FacetData {
            normal,
            area: len,
            support,
            vertex_ids: vec![i, j],
            simplices: vec![vec![i, j]],
        });
        edges.push((i, j));
    }
    let interior = ring.iter().sum::<Vec3>() / m as f64;
    let volume = fan_volume(2, &ring, &facets, &interior);
    let origin_interior = facets.iter().all(|f| f.support > ORIGIN_MARGIN);
    Ok(Polytope {
        dim: 2,
        vertices: ring,
        facets,
        edges,
        interior_point: interior,
        volume,
        origin_interior,
    })
}

// ---------------------------------------------------------------------------
// 3D: incremental hull with coplanar facet merging
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Tri {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
    area: f64,
    alive: bool,
}

fn tri_geometry(a: &Vec3, b: &Vec3, c: &Vec3) -> (Vec3, f64) {
    let cr = (b - a).cross(&(c - a));
    (cr, cr.norm() / 2.0)
}

/// Build a hull triangle with outward normal and matching vertex winding
/// (the cross product of the directed edges points outward). Consistent
/// winding is what makes horizon edges detectable as missing twins.
fn make_tri(
    pts: &[Vec3],
    v: [usize; 3],
    inner: &Vec3,
    parent_normal: Option<Vec3>,
    scale: f64,
) -> Tri {
    let (cr, area) = tri_geometry(&pts[v[0]], &pts[v[1]], &pts[v[2]]);
    if cr.norm() <= 1e-14 * scale * scale {
        // Degenerate sliver: inherit the plane of the facet it split off
        // from (winding from the horizon edge is already correct) so
        // visibility stays sane until merging cleans it up.
        let normal = parent_normal.unwrap_or_else(Vec3::z);
        return Tri { v, normal, offset: normal.dot(&pts[v[0]]), area, alive: true };
    }
    let mut normal = cr.normalize();
    let mut verts = v;
    let mut offset = normal.dot(&pts[v[0]]);
    if normal.dot(inner) > offset {
        normal = -normal;
        offset = -offset;
        verts = [v[0], v[2], v[1]];
    }
    Tri { v: verts, normal, offset, area, alive: true }
}

fn initial_tetrahedron(pts: &[Vec3], scale: f64) -> Result<[usize; 4], GeometryError> {
    let i0 = 0;
    let mut i1 = 0;
    let mut best = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let d = (p - pts[i0]).norm();
        if d > best {
            best = d;
            i1 = i;
        }
    }
    if best <= 1e-12 * scale {
        return Err(GeometryError::DegenerateInput);
    }
    let dir = (pts[i1] - pts[i0]).normalize();
    let mut i2 = 0;
    best = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let rel = p - pts[i0];
        let d = (rel - dir * rel.dot(&dir)).norm();
        if d > best {
            best = d;
            i2 = i;
        }
    }
    if best <= 1e-12 * scale {
        return Err(GeometryError::DegenerateInput);
    }
    let (cr, _) = tri_geometry(&pts[i0], &pts[i1], &pts[i2]);
    let n = cr.normalize();
    let mut i3 = 0;
    best = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let d = (p - pts[i0]).dot(&n).abs();
        if d > best {
            best = d;
            i3 = i;
        }
    }
    if best <= 1e-10 * scale {
        return Err(GeometryError::DegenerateInput);
    }
    Ok([i0, i1, i2, i3])
}

fn hull_3d(pts: &[Vec3], scale: f64) -> Result<(Vec<Tri>, Vec3), GeometryError> {
    // Faces the point is coplanar with (within the merge tolerance) count
    // as visible; otherwise a point on the plane of a face but outside its
    // polygon would be dropped as interior. The degenerate fans this
    // creates are absorbed by facet merging and the extreme-vertex filter.
    let eps_vis = -COPLANAR_TOL * scale;
    let [i0, i1, i2, i3] = initial_tetrahedron(pts, scale)?;
    let inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    let mut tris: Vec<Tri> = vec![
        make_tri(pts, [i0, i1, i2], &inner, None, scale),
        make_tri(pts, [i0, i1, i3], &inner, None, scale),
        make_tri(pts, [i0, i2, i3], &inner, None, scale),
        make_tri(pts, [i1, i2, i3], &inner, None, scale),
    ];

    let eps_strict = 1e-12 * scale;
    let seeded = [i0, i1, i2, i3];
    for (idx, p) in pts.iter().enumerate() {
        if seeded.contains(&idx) {
            continue;
        }
        let mut strictly_visible = false;
        let visible: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                if !t.alive {
                    return false;
                }
                let d = t.normal.dot(p) - t.offset;
                if d > eps_strict {
                    strictly_visible = true;
                }
                d > eps_vis
            })
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Directed edges of visible triangles; a horizon edge has no twin.
        let mut dir_edges: HashMap<(usize, usize), usize> = HashMap::new();
        for &ti in &visible {
            let v = tris[ti].v;
            for k in 0..3 {
                dir_edges.insert((v[k], v[(k + 1) % 3]), ti);
            }
        }
        let horizon: Vec<((usize, usize), usize)> = dir_edges
            .iter()
            .filter(|(&(a, b), _)| !dir_edges.contains_key(&(b, a)))
            .map(|(&e, &ti)| (e, ti))
            .collect();
        if !strictly_visible {
            // The point only grazes facet planes. It extends the hull only
            // if it falls outside the horizon polygon of the grazed
            // facets; interior grazing points would merely shatter the
            // facet into slivers.
            let inside = horizon.iter().all(|&((a, b), ti)| {
                let n = tris[ti].normal;
                (pts[b] - pts[a]).cross(&(p - pts[a])).dot(&n) >= -eps_vis.abs() * scale
            });
            if inside {
                continue;
            }
        }
        let mut new_tris = Vec::new();
        for &((a, b), ti) in &horizon {
            let parent = tris[ti].normal;
            new_tris.push(make_tri(pts, [a, b, idx], &inner, Some(parent), scale));
        }
        for &ti in &visible {
            tris[ti].alive = false;
        }
        tris.extend(new_tris);
        tris.retain(|t| t.alive);
    }
    Ok((tris, inner))
}

/// Union-find merge of coplanar triangles, extreme-vertex filtering and
/// facet assembly.
fn finish_3d(pts: &[Vec3], scale: f64) -> Result<Polytope, GeometryError> {
    let (tris, _inner) = hull_3d(pts, scale)?;
    let plane_tol = COPLANAR_TOL * scale;

    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }

    // Adjacency via shared undirected edges.
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t.v[k], t.v[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if let Some(&tj) = edge_owner.get(&key) {
                let (big, small) = if tris[ti].area >= tris[tj].area { (ti, tj) } else { (tj, ti) };
                let plane = &tris[big];
                let coplanar = tris[small]
                    .v
                    .iter()
                    .all(|&vi| (plane.normal.dot(&pts[vi]) - plane.offset).abs() <= plane_tol);
                if coplanar {
                    let (ri, rj) = (find(&mut parent, ti), find(&mut parent, tj));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            } else {
                edge_owner.insert(key, ti);
            }
        }
    }

    // Group triangles into facets.
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for ti in 0..tris.len() {
        let root = find(&mut parent, ti);
        groups.entry(root).or_default().push(ti);
    }

    struct RawFacet {
        normal: Vec3,
        area: f64,
        members: Vec<usize>,
        vertex_ids: Vec<usize>,
    }
    let mut raw: Vec<RawFacet> = Vec::new();
    for (_, members) in groups {
        let mut weighted = Vec3::zeros();
        let mut area = 0.0;
        let mut vids: Vec<usize> = Vec::new();
        for &ti in &members {
            weighted += tris[ti].normal * tris[ti].area;
            area += tris[ti].area;
            vids.extend_from_slice(&tris[ti].v);
        }
        if area <= 1e-13 * scale * scale {
            continue;
        }
        vids.sort_unstable();
        vids.dedup();
        raw.push(RawFacet { normal: weighted.normalize(), area, members, vertex_ids: vids });
    }

    // A vertex is extreme iff three incident facet normals are linearly
    // independent.
    let mut incident: HashMap<usize, Vec<Vec3>> = HashMap::new();
    for f in &raw {
        for &vi in &f.vertex_ids {
            incident.entry(vi).or_default().push(f.normal);
        }
    }
    let mut keep: Vec<usize> = Vec::new();
    for (&vi, normals) in &incident {
        if normals.len() < 3 {
            continue;
        }
        'triples: for a in 0..normals.len() {
            for b in (a + 1)..normals.len() {
                for c in (b + 1)..normals.len() {
                    let det = normals[a].dot(&normals[b].cross(&normals[c]));
                    if det.abs() > 1e-9 {
                        keep.push(vi);
                        break 'triples;
                    }
                }
            }
        }
    }
    keep.sort_unstable();
    if keep.len() < 4 {
        return Err(GeometryError::DegenerateInput);
    }
    let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices: Vec<Vec3> = keep.iter().map(|&i| pts[i]).collect();

    // Assemble facets; facet boundary edges are triangle edges used once
    // within the group (with both endpoints extreme).
    let mut facets: Vec<FacetData> = Vec::new();
    let mut edge_set: HashMap<(usize, usize), usize> = HashMap::new();
    for f in raw {
        let support = vertices.iter().map(|v| v.dot(&f.normal)).fold(f64::NEG_INFINITY, f64::max);
        let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
        let mut simplices = Vec::new();
        for &ti in &f.members {
            let v = tris[ti].v;
            if tris[ti].area > 1e-13 * scale * scale {
                simplices.push(v.to_vec());
            }
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        for ((a, b), count) in edge_count {
            if count == 1 {
                if let (Some(&na), Some(&nb)) = (remap.get(&a), remap.get(&b)) {
                    *edge_set.entry((na.min(nb), na.max(nb))).or_insert(0) += 1;
                }
            }
        }
        let vertex_ids: Vec<usize> =
            f.vertex_ids.iter().filter_map(|vi| remap.get(vi).copied()).collect();
        let simplices: Vec<Vec<usize>> = simplices
            .into_iter()
            .filter_map(|tri| {
                tri.iter().map(|vi| remap.get(vi).copied()).collect::<Option<Vec<usize>>>()
            })
            .collect();
        facets.push(FacetData { normal: f.normal, area: f.area, support, vertex_ids, simplices });
    }
    let edges: Vec<(usize, usize)> = edge_set.into_keys().collect();

    let interior = vertices.iter().sum::<Vec3>() / vertices.len() as f64;
    let volume = fan_volume(3, &vertices, &facets, &interior);
    let origin_interior = facets.iter().all(|f| f.support > ORIGIN_MARGIN);
    let mut edges = edges;
    edges.sort_unstable();
    Ok(Polytope {
        dim: 3,
        vertices,
        facets,
        edges,
        interior_point: interior,
        volume,
        origin_interior,
    })
}

/// Exact cone decomposition from an interior point: each facet contributes
/// area * distance(point, facet plane) / n.
fn fan_volume(dim: usize, _vertices: &[Vec3], facets: &[FacetData], point: &Vec3) -> f64 {
    let n = dim as f64;
    facets.iter().map(|f| f.area * (f.support - f.normal.dot(point)) / n).sum()
}

/// Bounded intersection of halfspaces { x : normal . x <= support } with
/// all supports positive (the origin must be interior to the result).
///
/// Computed through duality: the polar of the intersection is the hull of
/// the points normal / support, and each facet (u, h) of that hull is the
/// vertex u / h of the intersection.
pub fn halfspace_intersection(
    dim: usize,
    constraints: &[(Vec3, f64)],
) -> Result<Polytope, GeometryError> {
    if constraints.iter().any(|&(_, h)| h <= ORIGIN_MARGIN) {
        return Err(GeometryError::OriginNotInterior);
    }
    let dual: Vec<Vec3> = constraints.iter().map(|(n, h)| n / *h).collect();
    let dual_hull = build_polytope(dim, &dual)?;
    let verts: Vec<Vec3> = dual_hull
        .facets()
        .iter()
        .map(|f| {
            if f.support <= ORIGIN_MARGIN {
                Err(GeometryError::DegenerateBody("unbounded halfspace intersection".into()))
            } else {
                Ok(f.normal / f.support)
            }
        })
        .collect::<Result<_, _>>()?;
    build_polytope(dim, &verts)
}
