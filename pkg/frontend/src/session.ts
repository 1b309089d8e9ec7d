/**
 * Client session state: mirrors the server-announced mode/hover, drives cue
 * playback (exactly one playback per audible hover), and tracks the haptic
 * meter level.
 */

import type { CuePlayer } from "./audio.js";
import type {
  ClientMessage,
  CueParams,
  SceneData,
  ServerMessage,
  TimbrePreset,
} from "./protocol.js";

export interface Transport {
  send(message: ClientMessage): void;
  readonly connected: boolean;
}

export interface SessionEvents {
  onSceneLoaded?(scene: SceneData): void;
  onStateChanged?(): void;
  onSelection?(object: string | null): void;
  onError?(msg: string): void;
}

export class ClientSession {
  scene: SceneData | null = null;
  presets: Record<string, TimbrePreset> = {};
  mode: "idle" | "global" | "local" = "idle";
  localCluster: string[] = [];
  hovered: string | null = null;
  lastCue: CueParams | null = null;
  meterLevel = 0;
  playbackCount = 0;
  eventLog: ServerMessage[] = [];

  private meterTimer: ReturnType<typeof setTimeout> | null = null;
  private lastGazeSentMs = -Infinity;

  constructor(
    private readonly transport: Transport,
    private readonly player: CuePlayer,
    private readonly events: SessionEvents = {},
    private readonly gazeIntervalMs = 16,
  ) {}

  /** Handle one server message; returns it for convenience in tests. */
  receive(message: ServerMessage): ServerMessage {
    this.eventLog.push(message);
    switch (message.type) {
      case "scene":
        this.scene = message.scene;
        this.presets = message.presets;
        this.events.onSceneLoaded?.(message.scene);
        break;
      case "mode":
        this.mode = message.mode;
        this.localCluster = message.mode === "local" ? (message.cluster ?? []) : [];
        if (message.mode === "idle") {
          this.hovered = null;
          this.setMeter(0);
        }
        break;
      case "hover":
        this.hovered = message.object;
        this.lastCue = message.cue;
        if (message.cue.kind !== "silent") {
          this.playbackCount += 1;
          this.player.play(message.cue, this.presets[message.cue.timbre]);
          this.setMeter(message.cue.amplitude, message.cue.duration_s);
        } else {
          this.setMeter(0);
        }
        break;
      case "hover_exit":
        if (this.hovered === message.object) {
          this.hovered = null;
        }
        this.setMeter(0);
        break;
      case "selection":
        this.events.onSelection?.(message.object);
        break;
      case "error":
        this.events.onError?.(message.msg);
        break;
    }
    this.events.onStateChanged?.();
    return message;
  }

  private setMeter(level: number, holdS?: number): void {
    if (this.meterTimer !== null) {
      clearTimeout(this.meterTimer);
      this.meterTimer = null;
    }
    this.meterLevel = level;
    if (level > 0 && holdS !== undefined) {
      this.meterTimer = setTimeout(() => {
        this.meterLevel = 0;
        this.events.onStateChanged?.();
      }, holdS * 1000);
    }
  }

  // -- outbound commands (dropped with a notice when disconnected) ----------

  private sendCommand(message: ClientMessage): boolean {
    if (!this.transport.connected) {
      this.events.onError?.("not connected; command dropped");
      return false;
    }
    this.transport.send(message);
    return true;
  }

  hello(): void {
    this.sendCommand({ type: "hello" });
  }

  activate(): void {
    this.sendCommand({ type: "activate" });
  }

  deactivate(): void {
    this.sendCommand({ type: "deactivate" });
  }

  enterLocal(): void {
    this.sendCommand({ type: "enter_local" });
  }

  exitLocal(): void {
    this.sendCommand({ type: "exit_local" });
  }

  select(): void {
    this.sendCommand({ type: "select" });
  }

  /** Forward a gaze message, throttled to one per gazeIntervalMs. */
  gaze(message: ClientMessage & { type: "gaze" }, nowMs: number): boolean {
    if (nowMs - this.lastGazeSentMs < this.gazeIntervalMs) {
      return false;
    }
    if (!this.transport.connected) {
      return false;
    }
    this.lastGazeSentMs = nowMs;
    this.transport.send(message);
    return true;
  }
}

/**
 * Keyboard/mouse bindings: hold Space for local mode, click to select.
 * Returns the handlers so tests can invoke them without a DOM.
 */
export function interactionBindings(session: ClientSession) {
  let spaceHeld = false;
  return {
    keydown(key: string): void {
      if (key === " " && !spaceHeld) {
        spaceHeld = true;
        session.enterLocal();
      }
    },
    keyup(key: string): void {
      if (key === " " && spaceHeld) {
        spaceHeld = false;
        session.exitLocal();
      }
    },
    click(): void {
      session.select();
    },
  };
}
