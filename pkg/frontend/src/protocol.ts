/** Wire protocol types shared with the session server (newline-delimited JSON). */

export type Vec3 = [number, number, number];

export interface CueParams {
  pitch_hz: number;
  amplitude: number;
  pan: number;
  timbre: string;
  duration_s: number;
  kind: "sonohaptics" | "static" | "silent";
}

export interface TimbrePreset {
  material: string;
  base_hz: number;
  /** [frequency ratio, relative gain, T60 decay seconds] per partial. */
  modes: [number, number, number][];
  noise_gain: number;
  noise_cutoff_hz: number;
  noise_decay_s: number;
}

export interface SceneObjectData {
  id: string;
  name: string;
  position: Vec3;
  bbox: { center: Vec3; extents: Vec3 };
  material: string;
  color: { rgb?: [number, number, number]; texture?: string };
  hidden: boolean;
}

export interface SceneData {
  version: number;
  name: string;
  objects: SceneObjectData[];
}

export type ServerMessage =
  | { type: "scene"; scene: SceneData; presets: Record<string, TimbrePreset>; config: Record<string, unknown> }
  | { type: "hover"; object: string; cue: CueParams; t: number }
  | { type: "hover_exit"; object: string; t: number }
  | { type: "mode"; mode: "idle" | "global" | "local"; t: number; cluster?: string[] }
  | { type: "selection"; object: string | null; t: number }
  | { type: "error"; msg: string };

export type ClientMessage =
  | { type: "hello" }
  | { type: "gaze"; t: number; origin: Vec3; dir: Vec3; head_forward: Vec3; head_pos: Vec3 }
  | { type: "activate" | "deactivate" | "enter_local" | "exit_local" | "select"; t?: number };

export function parseServerMessage(line: string): ServerMessage {
  const raw = JSON.parse(line);
  if (typeof raw !== "object" || raw === null || typeof raw.type !== "string") {
    throw new Error(`not a protocol message: ${line}`);
  }
  return raw as ServerMessage;
}

export function encodeMessage(message: ClientMessage): string {
  return JSON.stringify(message) + "\n";
}

/** Incremental NDJSON splitter for stream transports. */
export class LineBuffer {
  private pending = "";

  push(chunk: string): string[] {
    this.pending += chunk;
    const parts = this.pending.split("\n");
    this.pending = parts.pop() ?? "";
    return parts.filter((p) => p.trim().length > 0);
  }
}
