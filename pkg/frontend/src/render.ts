/**
 * DOM-free rendering: a screen is described as plain data (plus an HTML
 * serializer), so the widget logic is testable without a browser.
 */
import { isActionLegal } from './guards.js';
import type { EventKind, ItemState, QABundle } from './types.js';

export interface Button {
  label: 'Next' | 'Unlock' | 'Question' | 'unnatural' | 'NSFW' | 'Accept' | 'Reject';
  kind: EventKind;
  enabled: boolean;
}

export interface Screen {
  imageUrl: string;
  yonQuestion: string;
  mcqQuestion: string;
  mcqOptions: string[];
  vqaQuestion: string;
  caption: string;
  buttons: Button[];
  editEnabled: boolean;
  reviewDiff: string[];
}

export function renderItem(
  bundle: QABundle,
  state: ItemState,
  expertId: string,
): Screen {
  const btn = (label: Button['label'], kind: EventKind): Button => ({
    label,
    kind,
    enabled: isActionLegal(state, kind, expertId),
  });
  if (bundle.mcq.options.length !== 4) {
    throw new Error(
      `expected 4 options, got ${bundle.mcq.options.length}`,
    );
  }
  return {
    imageUrl: `/images/${bundle.image_id}`,
    yonQuestion: bundle.yon.question,
    mcqQuestion: bundle.mcq.question,
    mcqOptions: [...bundle.mcq.options],
    vqaQuestion: bundle.vqa.question,
    caption: bundle.cap.caption,
    buttons: [
      btn('Next', 'Answer'),
      btn('Unlock', 'Unlock'),
      btn('Question', 'RedesignQuestion'),
      btn('unnatural', 'ExcludeUnnatural'),
      btn('NSFW', 'ExcludeNSFW'),
      btn('Accept', 'ReviewVerdict'),
      btn('Reject', 'ReviewVerdict'),
    ],
    editEnabled: state.status === 'UnderEdit',
    reviewDiff: [...state.changed_fields],
  };
}

function esc(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function toHtml(screen: Screen): string {
  const options = screen.mcqOptions
    .map((o, i) => `<li><kbd>${i + 1}</kbd> ${esc(o)}</li>`)
    .join('');
  const buttons = screen.buttons
    .map(
      (b) =>
        `<button data-kind="${b.kind}"${b.enabled ? '' : ' disabled'}>${esc(
          b.label,
        )}</button>`,
    )
    .join('');
  return [
    `<div class="image-pane"><img src="${esc(screen.imageUrl)}" alt=""></div>`,
    `<div class="task-pane">`,
    `<p class="yon">${esc(screen.yonQuestion)}</p>`,
    `<p class="mcq">${esc(screen.mcqQuestion)}</p>`,
    `<ol class="options">${options}</ol>`,
    `<p class="vqa">${esc(screen.vqaQuestion)}</p>`,
    `<p class="caption">${esc(screen.caption)}</p>`,
    screen.editEnabled ? `<div class="edit-widgets"></div>` : '',
    `<div class="buttons">${buttons}</div>`,
    `</div>`,
  ].join('\n');
}
