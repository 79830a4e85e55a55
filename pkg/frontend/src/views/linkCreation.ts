/** Link Creation tab: one panel per instance, element trees with
 * checkboxes, a live preview of the selection, and Save. */

import { ApiClient, ApiError } from '../api';
import { clear, h } from '../dom';
import { SelectionState, SelectedRef } from '../state';
import type { ApiElement, ProviderInstance } from '../types';

export interface LinkCreationContext {
  api: ApiClient;
  selection: SelectionState;
  onLinkCreated?: () => void;
}

function renderTree(
  elements: ApiElement[],
  instance: ProviderInstance,
  ctx: LinkCreationContext,
  onToggle: () => void,
): HTMLUListElement {
  const list = h('ul', { className: 'element-tree' });
  for (const element of elements) {
    const ref: SelectedRef = {
      instance_id: instance.instance_id,
      origin_id: element.origin_id,
      element_type: element.type,
      title: element.title,
      instance_display_name: instance.display_name,
    };
    const checkbox = h('input', {
      type: 'checkbox',
      checked: ctx.selection.isChecked(ref),
      dataset: { originId: element.origin_id, elementType: element.type },
    });
    checkbox.addEventListener('change', () => {
      ctx.selection.toggle(ref);
      onToggle();
    });
    const item = h('li', {},
      h('label', {}, checkbox, ` ${element.title} `, h('small', {}, `(${element.type})`)));
    if (element.children?.length) {
      item.append(renderTree(element.children, instance, ctx, onToggle));
    }
    list.append(item);
  }
  return list;
}

export async function renderLinkCreation(
  container: HTMLElement,
  ctx: LinkCreationContext,
): Promise<void> {
  clear(container);
  const { instances } = await ctx.api.instances();

  const preview = h('ul', { className: 'preview-list' });
  const saveButton = h('button', { className: 'save-link', textContent: 'Save', disabled: true });
  const saveError = h('p', { className: 'error', hidden: true });

  const refreshPreview = () => {
    clear(preview);
    for (const ref of ctx.selection.preview()) {
      preview.append(h('li', {},
        `${ref.title} `, h('small', {}, `(${ref.element_type} — ${ref.instance_display_name})`)));
    }
    saveButton.disabled = !ctx.selection.canSave();
  };

  saveButton.addEventListener('click', async () => {
    saveError.hidden = true;
    try {
      await ctx.api.createLink(ctx.selection.preview().map((ref) => ({
        instance_id: ref.instance_id,
        origin_id: ref.origin_id,
        element_type: ref.element_type,
      })));
    } catch (error) {
      if (error instanceof ApiError) {
        saveError.textContent = `${error.message} (${error.code})`;
        saveError.hidden = false;
        return;
      }
      throw error;
    }
    ctx.selection.clear();
    refreshPreview();
    ctx.onLinkCreated?.();
  });

  const panels = h('div', { className: 'instance-panels' });
  container.append(
    h('h2', {}, 'Available objects'),
    panels,
    h('h2', {}, 'Selected for linking'),
    preview,
    saveButton,
    saveError,
  );

  const panelFor = (instance: ProviderInstance): HTMLElement => {
    const body = h('div', { className: 'panel-body' }, 'loading…');
    const panel = h('details', { className: 'instance-panel', open: true,
                                 dataset: { instanceId: instance.instance_id } },
      h('summary', {}, `${instance.display_name} `, h('small', {}, instance.kind)),
      body);
    const load = async () => {
      clear(body);
      try {
        const forest = await ctx.api.elements(instance.instance_id);
        body.append(renderTree(forest.roots, instance, ctx, refreshPreview));
      } catch (error) {
        const retry = h('button', { textContent: 'Retry' });
        retry.addEventListener('click', load);
        const message = error instanceof ApiError
          ? `${error.message} (${error.code})` : String(error);
        body.append(h('p', { className: 'error' }, message), retry);
      }
    };
    void load();
    return panel;
  };
  // panels load concurrently; one failing panel must not break the rest
  for (const instance of instances) panels.append(panelFor(instance));

  refreshPreview();
}
