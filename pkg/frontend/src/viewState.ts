/**
 * Session controller for one expert tab.
 *
 * Holds the current item, a dirty-edit buffer, and the latest validation
 * report. Action legality mirrors the service guards; on a 409 the state
 * is re-synced from GET /state rather than guessed. The service log stays
 * the single source of truth — nothing is persisted locally.
 */
import { ApiClient, ConflictError } from './client.js';
import { isActionLegal, legalActions } from './guards.js';
import type {
  EditableField,
  EditBuffer,
  EventKind,
  ItemState,
  QABundle,
} from './types.js';
import { validateBundle, type ValidationReport } from './validate.js';

export interface ViewState {
  bundle: QABundle | null;
  state: ItemState | null;
  expertId: string;
  editBuffer: EditBuffer;
  selectedOption: number | null;
  validation: ValidationReport | null;
  busy: boolean;
  queueEmpty: boolean;
}

export function bundleWithEdits(bundle: QABundle, edits: EditBuffer): QABundle {
  const next: QABundle = structuredClone(bundle);
  for (const [field, value] of Object.entries(edits)) {
    switch (field as EditableField) {
      case 'yon_question':
        next.yon.question = value as string;
        break;
      case 'yon_answer':
        next.yon.answer = value as boolean;
        break;
      case 'mcq_question':
        next.mcq.question = value as string;
        break;
      case 'mcq_options':
        next.mcq.options = value as string[];
        break;
      case 'mcq_correct':
        next.mcq.correct = value as number;
        break;
      case 'vqa_question':
        next.vqa.question = value as string;
        break;
      case 'vqa_answer':
        next.vqa.answer = value as string;
        break;
      case 'caption':
        next.cap.caption = value as string;
        break;
    }
  }
  return next;
}

export class AnnotationSession {
  readonly view: ViewState;

  constructor(
    private readonly client: ApiClient,
    expertId: string,
  ) {
    this.view = {
      bundle: null,
      state: null,
      expertId,
      editBuffer: {},
      selectedOption: null,
      validation: null,
      busy: false,
      queueEmpty: false,
    };
  }

  /** Actions whose buttons are enabled right now. */
  availableActions(): EventKind[] {
    if (!this.view.state || this.view.busy) return [];
    return legalActions(this.view.state, this.view.expertId);
  }

  async loadNext(): Promise<void> {
    const res = await this.client.nextItem(this.view.expertId);
    this.view.queueEmpty = res.empty;
    this.view.bundle = res.bundle ?? null;
    this.view.state = res.state ?? null;
    this.view.editBuffer = {};
    this.view.selectedOption = null;
    this.view.validation = null;
  }

  /** Keyboard mapping: digits 1-4 pick an MCQ option, Enter answers. */
  async handleKey(key: string): Promise<void> {
    if (!this.view.bundle) return;
    if (key >= '1' && key <= '4') {
      this.view.selectedOption = Number(key) - 1;
      return;
    }
    if (key === 'Enter') {
      await this.submit('Answer', {
        yon: this.view.bundle.yon.answer,
        mcq_selected: this.view.selectedOption,
      });
    }
  }

  setField(field: EditableField, value: unknown): void {
    this.view.editBuffer[field] = value;
    if (this.view.bundle) {
      this.view.validation = validateBundle(
        bundleWithEdits(this.view.bundle, this.view.editBuffer),
      );
    }
  }

  /**
   * Submit an event; edits carry the dirty buffer and are blocked
   * client-side when the edited bundle fails a hard rule. On service
   * rejection the local state re-syncs from GET /state.
   */
  async submit(
    kind: EventKind,
    payload: Record<string, unknown> = {},
  ): Promise<ItemState | null> {
    const { bundle, state, expertId } = this.view;
    if (!bundle || !state) return null;
    if (!isActionLegal(state, kind, expertId)) {
      throw new Error(`${kind} is not legal from ${state.status}`);
    }
    let body = payload;
    if (kind === 'EditChoice' || kind === 'RedesignQuestion') {
      const report = validateBundle(bundleWithEdits(bundle, this.view.editBuffer));
      if (!report.ok) {
        this.view.validation = report;
        throw new Error(
          `edit blocked: ${report.verdicts
            .filter((v) => v.level === 'hard')
            .map((v) => `${v.rule}: ${v.detail}`)
            .join('; ')}`,
        );
      }
      body = { fields: { ...this.view.editBuffer }, ...payload };
    }
    this.view.busy = true;
    try {
      const res = await this.client.submitEvent(
        expertId,
        bundle.image_id,
        kind,
        body,
      );
      this.view.state = res.state;
      this.view.editBuffer = {};
      return res.state;
    } catch (err) {
      if (err instanceof ConflictError) {
        this.view.state = await this.client.state(bundle.image_id);
      }
      throw err;
    } finally {
      this.view.busy = false;
    }
  }

  /** Answer and advance: the main annotation loop. */
  async answerAndAdvance(payload: Record<string, unknown> = {}): Promise<void> {
    await this.submit('Answer', payload);
    await this.loadNext();
  }
}
