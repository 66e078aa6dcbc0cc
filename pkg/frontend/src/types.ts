// JSON shapes mirrored from the session service.

export type Pt = [number, number];

export interface EdgeInfo {
  dual: [Pt, Pt];
  bounded: boolean;
  exposed: boolean;
  direction: [number, number];
  twisted: boolean;
}

export interface Report {
  g: number;
  rank: number;
  components: number;
  dividing: boolean;
  maximal: boolean;
  m_defect: number;
  certificate: string;
  all_ovals: boolean;
  p: number | null;
  n: number | null;
}

export interface SessionState {
  id: string;
  revision: number;
  polygon: Pt[];
  points: Pt[];
  genus: number;
  strict_even_degree: boolean;
  smooth_fan: boolean;
  edges: EdgeInfo[];
  signs: [number, number, number][];
  twists: [Pt, Pt][];
  report: Report;
}

export interface RejectedToggle {
  code: string;
  message: string;
  violated_cycle: Pt | null;
}

export type ViewName = "subdivision" | "zones" | "realpart";
