/** Customization patch operations, mirroring the CLI `patch` subcommand:
 * applied in order, unknown ids reported (never fatal), stage deletion
 * cascades to its messages, result re-sorted. */

import { Bundle, Message, Nav, Stage } from "./types.js";

export type PatchOp =
  | { op: "setMessageText"; messageId: string; text: string }
  | { op: "setTooltipTitle"; messageId: string; title: string }
  | { op: "deleteMessage"; messageId: string }
  | { op: "addMessage"; message: Message }
  | { op: "setMessageStage"; messageId: string; stageId: string }
  | { op: "setMessageOrder"; messageId: string; order: number }
  | { op: "deleteStage"; stageId: string }
  | { op: "addStage"; stage: Stage }
  | { op: "setStageTitle"; stageId: string; value: string }
  | { op: "setStageColor"; stageId: string; value: string }
  | { op: "setStageIcon"; stageId: string; value: string }
  | { op: "setNav"; showStepper?: boolean; alignment?: Nav["alignment"] }
  | { op: "setMarkerNumbers"; value: boolean };

export interface PatchResult {
  bundle: Bundle;
  report: string[];
}

export function applyPatch(bundle: Bundle, ops: PatchOp[]): PatchResult {
  let messages = bundle.messages.map((m) => ({ ...m }));
  let stages = bundle.stages.map((s) => ({ ...s }));
  let nav: Nav = { ...bundle.nav };
  let markerNumbers = bundle.markerNumbers;
  const report: string[] = [];

  const messageIndex = (id: string) => messages.findIndex((m) => m.id === id);
  const stageIndex = (id: string) => stages.findIndex((s) => s.id === id);

  const patchMessage = (id: string, opName: string, changes: Partial<Message>) => {
    const i = messageIndex(id);
    if (i < 0) {
      report.push(`${opName}: unknown message id ${JSON.stringify(id)}`);
      return;
    }
    messages[i] = { ...messages[i]!, ...changes };
  };

  const patchStage = (id: string, opName: string, changes: Partial<Stage>) => {
    const i = stageIndex(id);
    if (i < 0) {
      report.push(`${opName}: unknown stage id ${JSON.stringify(id)}`);
      return;
    }
    stages[i] = { ...stages[i]!, ...changes };
  };

  for (const op of ops) {
    switch (op.op) {
      case "setMessageText":
        patchMessage(op.messageId, op.op, { text: op.text });
        break;
      case "setTooltipTitle":
        patchMessage(op.messageId, op.op, { title: op.title });
        break;
      case "deleteMessage": {
        const i = messageIndex(op.messageId);
        if (i < 0) {
          report.push(`deleteMessage: unknown message id ${JSON.stringify(op.messageId)}`);
        } else {
          messages.splice(i, 1);
        }
        break;
      }
      case "addMessage":
        if (messageIndex(op.message.id) >= 0) {
          report.push(`addMessage: duplicate message id ${JSON.stringify(op.message.id)}`);
        } else if (stageIndex(op.message.stageId) < 0) {
          report.push(`addMessage: unknown stage id ${JSON.stringify(op.message.stageId)}`);
        } else {
          messages.push({ ...op.message });
        }
        break;
      case "setMessageStage":
        if (stageIndex(op.stageId) < 0) {
          report.push(`setMessageStage: unknown stage id ${JSON.stringify(op.stageId)}`);
        } else {
          patchMessage(op.messageId, op.op, { stageId: op.stageId });
        }
        break;
      case "setMessageOrder":
        patchMessage(op.messageId, op.op, { order: op.order });
        break;
      case "deleteStage": {
        const i = stageIndex(op.stageId);
        if (i < 0) {
          report.push(`deleteStage: unknown stage id ${JSON.stringify(op.stageId)}`);
        } else {
          stages.splice(i, 1);
          messages = messages.filter((m) => m.stageId !== op.stageId);
        }
        break;
      }
      case "addStage":
        if (stageIndex(op.stage.id) >= 0) {
          report.push(`addStage: duplicate stage id ${JSON.stringify(op.stage.id)}`);
        } else if (stages.some((s) => s.order === op.stage.order)) {
          report.push(`addStage: duplicate stage order ${op.stage.order}`);
        } else {
          stages.push({ ...op.stage });
        }
        break;
      case "setStageTitle":
        patchStage(op.stageId, op.op, { title: op.value });
        break;
      case "setStageColor":
        patchStage(op.stageId, op.op, { color: op.value });
        break;
      case "setStageIcon":
        patchStage(op.stageId, op.op, { iconName: op.value });
        break;
      case "setNav":
        nav = {
          showStepper: op.showStepper ?? nav.showStepper,
          alignment: op.alignment ?? nav.alignment,
        };
        break;
      case "setMarkerNumbers":
        markerNumbers = op.value;
        break;
    }
  }

  stages.sort((a, b) => a.order - b.order);
  const stageOrder = new Map(stages.map((s) => [s.id, s.order]));
  messages.sort((a, b) => {
    const sa = stageOrder.get(a.stageId) ?? 0;
    const sb = stageOrder.get(b.stageId) ?? 0;
    return sa === sb ? a.order - b.order : sa - sb;
  });

  return { bundle: { ...bundle, messages, stages, nav, markerNumbers }, report };
}
