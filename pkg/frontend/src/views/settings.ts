/** Settings tab: configured provider instances plus the "+ ADD" form. */

import { ApiClient, ApiError } from '../api';
import { clear, h } from '../dom';

export interface SettingsContext {
  api: ApiClient;
}

export async function renderSettings(container: HTMLElement, ctx: SettingsContext): Promise<void> {
  clear(container);
  const listing = await ctx.api.instances();

  const table = h('table', { className: 'instance-table' });
  table.append(
    h('tr', {},
      h('th', {}, 'Name'), h('th', {}, 'Provider'), h('th', {}, 'Host'),
      h('th', {}, 'API key'), h('th', {}, '')),
  );
  for (const instance of listing.instances) {
    const remove = h('button', { className: 'danger', textContent: 'Delete' });
    remove.addEventListener('click', async () => {
      try {
        await ctx.api.deleteInstance(instance.instance_id);
      } catch (error) {
        if (error instanceof ApiError && error.code === 'instance_in_use') {
          if (!window.confirm(`${error.message}\nDelete the instance and its links?`)) return;
          await ctx.api.deleteInstance(instance.instance_id, true);
        } else {
          throw error;
        }
      }
      await renderSettings(container, ctx);
    });
    table.append(
      h('tr', { dataset: { instanceId: instance.instance_id } },
        h('td', {}, instance.display_name),
        h('td', {}, instance.kind),
        h('td', {}, instance.host),
        h('td', {}, instance.has_api_key ? 'set' : '—'),
        h('td', {}, remove)),
    );
  }

  const kindSelect = h('select', { className: 'field-kind' });
  for (const descriptor of listing.providers) {
    kindSelect.append(h('option', { value: descriptor.kind }, descriptor.display_name));
  }
  const nameInput = h('input', { className: 'field-display-name', placeholder: 'Display name' });
  const hostInput = h('input', { className: 'field-host', placeholder: 'Host URL' });
  const keyInput = h('input', {
    className: 'field-api-key', placeholder: 'API key (if required)', type: 'password',
  });
  const formError = h('p', { className: 'error', hidden: true });
  const submit = h('button', { textContent: 'Save' });

  const form = h('form', { className: 'add-instance', hidden: true },
    nameInput, hostInput, keyInput, kindSelect, submit, formError);
  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    formError.hidden = true;
    try {
      await ctx.api.createInstance({
        display_name: nameInput.value,
        kind: kindSelect.value,
        host: hostInput.value,
        api_key: keyInput.value || undefined,
      });
      await renderSettings(container, ctx);
    } catch (error) {
      if (error instanceof ApiError) {
        formError.textContent = `${error.message} (${error.code})`;
        formError.dataset.code = error.code;
        formError.hidden = false;
        return;
      }
      throw error;
    }
  });

  const addButton = h('button', { className: 'add-button', textContent: '+ ADD' });
  addButton.addEventListener('click', () => {
    form.hidden = !form.hidden;
  });

  container.append(
    h('h2', {}, 'Data provider instances'),
    table,
    addButton,
    form,
  );
}
